#pragma once

#include "heun/core.hpp"

namespace heun {

// Three-term recurrence P_n b_n = Q_n b_{n-1} + R_n b_{n-2} for the series
// about z = 0:
//   P_n = a n (gamma - 1 + n)
//   Q_n = q + (n-1) [(a+1)(gamma + n - 2) + epsilon + a delta]
//   R_n = -(n - 2 + alpha)(n - 2 + beta)
struct ThreeTermCoeffs {
  Complex P{};
  Complex Q{};
  Complex R{};
};

ThreeTermCoeffs recurrence_pqr(const HeunParams& p, long n);

// Coupling coefficients of the logarithmic series,
//   S_n = a (1 - gamma - 2n)
//   T_n = epsilon + a delta + (a+1)(gamma + 2n - 3)
//   U_n = 4 - 2n - alpha - beta
struct LogCoupling {
  Complex S{};
  Complex T{};
  Complex U{};
};

LogCoupling log_coupling(const HeunParams& p, long n);

// Parameters of the inner first solution in the gamma != 1 representation of
// the second solution: (a, q - (gamma-1)(epsilon + a delta), beta-gamma+1,
// alpha-gamma+1, 2-gamma, delta).
HeunParams transform_hs(const HeunParams& p);

// First local solution about z = 0, normalized to Hl(0) = 1.  Generic gamma
// sums b_n z^n via the stabilized form t_n = b_n z^n; for gamma in {0, -1, ...}
// the series carries a log(z) factor starting at power nsp = 1 - gamma.
// Requires |z| < min{1, |a|}.
EvalResult series_hl_at_zero(const HeunParams& p, Complex z,
                             const EvalOptions& opts = {});

// Second local solution about z = 0 with exponent 1 - gamma.  For gamma != 1
// this is z^{1-gamma} Hl(a, q - (gamma-1)(epsilon + a delta), beta-gamma+1,
// alpha-gamma+1, 2-gamma, delta; z); for gamma = 1 a logarithmic series.
// Requires 0 < |z| < min{1, |a|}.
EvalResult series_hs_at_zero(const HeunParams& p, Complex z,
                             const EvalOptions& opts = {});

namespace detail {

// As above but with an explicit branch angle for log(z) and z^{1-gamma},
// used by analytic continuation along paths that wind around the origin.
EvalResult series_hl0(const HeunParams& p, Complex z, const EvalOptions& opts,
                      double theta);
EvalResult series_hs0(const HeunParams& p, Complex z, const EvalOptions& opts,
                      double theta);

}  // namespace detail

}  // namespace heun
