#include "heun/continuation.hpp"

#include <algorithm>
#include <cmath>

#include "heun/series.hpp"
#include "heun/taylor.hpp"

namespace heun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr long kMaxStepsPerSegment = 200000;

double min_singular_distance(const HeunParams& p, Complex z) {
  return std::min({std::abs(z), std::abs(z - 1.0), std::abs(z - p.a)});
}

// Continuation along one straight segment; returns the end state plus the
// accumulated error indicator, term count and arg(z) change.
struct SegmentRun {
  Complex z{};
  Complex f{};
  Complex df{};
  double r = 0.0;
  long n_terms = 0;
  double dwinding = 0.0;
  long steps = 0;
};

SegmentRun run_segment(const HeunParams& p, Complex z_start, Complex f,
                       Complex df, Complex target, const EvalOptions& opts) {
  SegmentRun run;
  run.z = z_start;
  run.f = f;
  run.df = df;
  if (target == z_start) return run;
  const double theta = std::arg(target - z_start);
  const Complex step_dir = std::polar(1.0, theta);
  const double floor = 1e-12 * (1.0 + std::abs(p.a));
  long steps = 0;
  while (run.z != target) {
    const double rp = min_singular_distance(p, run.z);
    if (rp < floor) {
      throw PathTooClose("continuation step collapsed near a singular point",
                         {run.r, run.n_terms, run.z, Route::Basic});
    }
    const double dist = std::abs(target - run.z);
    const Complex znext =
        dist <= opts.kappa * rp ? target : run.z + opts.kappa * rp * step_dir;
    EvalResult er;
    try {
      er = taylor_eval(p, run.z, run.f, run.df, znext, opts);
    } catch (const NonConvergence& e) {
      throw NonConvergence(e.what(),
                           {run.r, run.n_terms + e.diagnostics().n_terms,
                            run.z, Route::Basic});
    }
    run.r += er.r;
    run.n_terms += er.n_terms;
    run.dwinding += std::arg(znext / run.z);
    run.f = er.f;
    run.df = er.df;
    run.z = znext;
    run.steps = ++steps;
    if (steps > kMaxStepsPerSegment) {
      throw NonConvergence("continuation exceeded the step budget",
                           {run.r, run.n_terms, run.z, Route::Basic});
    }
  }
  return run;
}

}  // namespace

namespace detail {

double arg_with_side(Complex z, int side) {
  if (z.imag() == 0.0 && z.real() < 0.0) return side < 0 ? -kPi : kPi;
  return std::arg(z);
}

Path default_path(const HeunParams& p, Complex z, int side) {
  Path path;
  path.waypoints.push_back(Complex(0.0));
  if (z == Complex(0.0)) return path;

  // zeta_1 is the singular point nearest to the origin
  const bool a_first = std::abs(p.a) < 1.0;
  const Complex zeta1 = a_first ? p.a : Complex(1.0);
  const Complex zeta2 = a_first ? Complex(1.0) : p.a;
  const double argz = arg_with_side(z, side);
  const Complex perp = std::polar(1.0, kPi / 2.0 + argz);
  const double znorm = std::norm(z);
  for (const Complex zeta : {zeta1, zeta2}) {
    const double rj = std::min(std::abs(zeta), std::abs(zeta1 - zeta2));
    const double sstar = (std::conj(z) * zeta).real() / znorm;
    if (!(sstar > 0.0 && sstar < 1.0)) continue;  // closest point not interior
    const Complex eta = sstar * z;
    const double dj = std::abs(zeta - eta);
    if (dj >= rj / 2.0) continue;
    const double im = (z / zeta).imag();
    const double sgn = im == 0.0 ? static_cast<double>(side)
                                 : (im < 0.0 ? -1.0 : 1.0);
    const Complex deflection =
        zeta + perp * std::min(rj / 2.0, std::abs(z - zeta)) * sgn;
    path.waypoints.push_back(deflection);
  }
  path.waypoints.push_back(z);
  return path;
}

EvalResult eval_along_path_side(const HeunParams& p, FunctionKind kind,
                                const Path& path, const EvalOptions& opts,
                                int side) {
  if (path.waypoints.empty() || path.waypoints.front() != Complex(0.0)) {
    throw DomainError("path must start at 0");
  }
  if (path.waypoints.size() == 1) {
    if (kind == FunctionKind::HeunS) {
      throw DomainError("second solution is not evaluated at z = 0");
    }
    EvalResult out = detail::series_hl0(p, Complex(0.0), opts, 0.0);
    out.route = Route::Origin;
    return out;
  }

  const bool hs_log = kind == FunctionKind::HeunS && p.gamma == Complex(1.0);
  const bool hs_power = kind == FunctionKind::HeunS && !hs_log;
  // for gamma != 1 the second solution is continued through the inner first
  // solution of the transformed parameters; the power prefactor is applied
  // at the end with the accumulated winding
  const HeunParams pw = hs_power ? transform_hs(p) : p;

  const Complex w1 = path.waypoints[1];
  const double theta1 = arg_with_side(w1, side);
  const double r0 = radius_zero(p);
  const Complex z1 =
      std::abs(w1) <= opts.kappa * r0 ? w1 : std::polar(opts.kappa * r0, theta1);

  EvalResult init;
  if (hs_log) {
    init = detail::series_hs0(p, z1, opts, theta1);
  } else {
    init = detail::series_hl0(pw, z1, opts, theta1);
  }
  Complex zc = z1;
  Complex f = init.f;
  Complex df = init.df;
  double r_sum = init.r;
  long n_sum = init.n_terms;
  long steps_sum = 0;
  double theta_acc = theta1;

  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const SegmentRun seg = run_segment(pw, zc, f, df, path.waypoints[i], opts);
    zc = seg.z;
    f = seg.f;
    df = seg.df;
    r_sum += seg.r;
    n_sum += seg.n_terms;
    theta_acc += seg.dwinding;
    steps_sum += seg.steps;
  }

  EvalResult out;
  if (hs_power) {
    const Complex one_minus_g = 1.0 - p.gamma;
    const Complex prefactor =
        std::exp(one_minus_g * Complex(std::log(std::abs(zc)), theta_acc));
    out.f = prefactor * f;
    out.df = prefactor * (df + one_minus_g / zc * f);
    out.r = std::abs(prefactor) * r_sum;
  } else {
    out.f = f;
    out.df = df;
    out.r = r_sum;
  }
  out.n_terms = n_sum;
  out.winding = theta_acc - theta1;
  out.steps = steps_sum;
  out.route = Route::PathEval;
  return out;
}

EvalResult basic_eval(const HeunParams& p, FunctionKind kind, Complex z,
                      const EvalOptions& opts, int side) {
  if (z == Complex(1.0) || z == p.a) {
    throw SingularPoint("evaluation point is a singular point",
                        {0.0, 0, z, Route::Basic});
  }
  const Path path = default_path(p, z, side);
  EvalResult out = eval_along_path_side(p, kind, path, opts, side);
  out.route = Route::Basic;
  return out;
}

}  // namespace detail

Path make_path(const HeunParams& p, const std::vector<Complex>& points) {
  Path path;
  path.waypoints.reserve(points.size() + 1);
  if (points.empty() || points.front() != Complex(0.0)) {
    path.waypoints.push_back(Complex(0.0));
  }
  path.waypoints.insert(path.waypoints.end(), points.begin(), points.end());
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const Complex w = path.waypoints[i];
    if (w == Complex(0.0) || w == Complex(1.0) || w == p.a) {
      throw DomainError("path waypoint coincides with a singular point");
    }
  }
  // no segment may pass through 1 or a
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const Complex u = path.waypoints[i - 1];
    const Complex v = path.waypoints[i];
    const Complex seg = v - u;
    for (const Complex s : {Complex(1.0), p.a}) {
      const Complex d = s - u;
      const Complex proj = std::conj(seg) * d;
      if (proj.imag() == 0.0 && proj.real() >= 0.0 &&
          proj.real() <= std::norm(seg)) {
        throw DomainError("path segment passes through a singular point");
      }
    }
  }
  return path;
}

EvalResult continue_segment(const HeunParams& p, Complex z_p, Complex f,
                            Complex df, Complex target,
                            const EvalOptions& opts) {
  const SegmentRun run = run_segment(p, z_p, f, df, target, opts);
  EvalResult out;
  out.f = run.f;
  out.df = run.df;
  out.r = run.r;
  out.n_terms = run.n_terms;
  out.winding = run.dwinding;
  out.steps = run.steps;
  out.route = Route::Basic;
  return out;
}

Path build_default_path(const HeunParams& p, Complex z) {
  if (z == Complex(1.0) || z == p.a) {
    throw OnCutOrSingular("target is a singular point");
  }
  if (on_cut_b0(z) || on_cut_b1(z) || on_cut_ba(p, z)) {
    throw OnCutOrSingular("target lies on a branch cut");
  }
  return detail::default_path(p, z, +1);
}

EvalResult eval_along_path(const HeunParams& p, FunctionKind kind,
                           const Path& path, const EvalOptions& opts) {
  return detail::eval_along_path_side(p, kind, path, opts, +1);
}

EvalResult hl_basic(const HeunParams& p, Complex z, const EvalOptions& opts) {
  return detail::basic_eval(p, FunctionKind::HeunL, z, opts, +1);
}

EvalResult hs_basic(const HeunParams& p, Complex z, const EvalOptions& opts) {
  return detail::basic_eval(p, FunctionKind::HeunS, z, opts, +1);
}

}  // namespace heun
