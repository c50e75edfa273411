#pragma once

#include <vector>

#include "heun/core.hpp"

namespace heun {

// Polyline of continuation waypoints; the first waypoint is always 0.
struct Path {
  std::vector<Complex> waypoints;
};

// Builds a Path from user waypoints (a leading 0 is prepended when absent)
// and checks the invariants: no later waypoint equals 0, 1 or a, and no
// segment passes through 1 or a.
Path make_path(const HeunParams& p, const std::vector<Complex>& points);

// Continues a solution from (z_p, f, df) to `target` along the straight
// segment, stepping z_{p+1} = z_p + e^{i theta} kappa R_p with
// R_p = min{|z_p|, |z_p-1|, |z_p-a|} and jumping to the target once
// |target - z_p| <= kappa R_p.  r and n_terms accumulate over the steps.
EvalResult continue_segment(const HeunParams& p, Complex z_p, Complex f,
                            Complex df, Complex target,
                            const EvalOptions& opts = {});

// Default singularity-avoiding path from 0 to z: the segment [0, z] with a
// deflection point inserted near 1 and/or a when the segment passes closer
// than half the local radius.  Throws OnCutOrSingular for z on a cut or at
// a singular point.
Path build_default_path(const HeunParams& p, Complex z);

// Evaluates the (multi-valued) function of the given kind along a polyline:
// power series at the first step point, then Taylor continuation per segment.
// For HeunS with gamma != 1 the prefactor z^{1-gamma} uses the accumulated
// winding of arg z along the path.
EvalResult eval_along_path(const HeunParams& p, FunctionKind kind,
                           const Path& path, const EvalOptions& opts = {});

// Single-valued evaluators over the default path, falling through to the
// direct series when |z| <= kappa * min{1, |a|}.
EvalResult hl_basic(const HeunParams& p, Complex z,
                    const EvalOptions& opts = {});
EvalResult hs_basic(const HeunParams& p, Complex z,
                    const EvalOptions& opts = {});

namespace detail {

// `side` resolves on-cut ambiguities: +1 approaches cut points from the upper
// half-plane (the default convention), -1 from below.  The near-singularity
// representations need the flipped side for their transformed arguments.

// Principal argument, except that exactly-negative-real points resolve to
// side * pi.
double arg_with_side(Complex z, int side);

Path default_path(const HeunParams& p, Complex z, int side);
EvalResult eval_along_path_side(const HeunParams& p, FunctionKind kind,
                                const Path& path, const EvalOptions& opts,
                                int side);
EvalResult basic_eval(const HeunParams& p, FunctionKind kind, Complex z,
                      const EvalOptions& opts, int side);

}  // namespace detail

}  // namespace heun
