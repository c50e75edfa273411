#pragma once

#include "heun/core.hpp"

namespace heun {

// Four-term recurrence for the Taylor expansion about an ordinary point z0:
//   P_n c_n = Q_n c_{n-1} + R_n c_{n-2} + S_n c_{n-3},
//   P_n = -n(n-1) z0 (z0-1)(z0-a)
//   Q_n = (n-1) { [gamma+delta+epsilon+3(n-2)] z0^2
//                 + [(a+1)(4-2n-gamma) - epsilon - a delta] z0
//                 + a (gamma+n-2) }
//   R_n = {(n-2)[2(gamma+delta+epsilon) + 3(n-3)] + alpha beta} z0 - q
//         - (n-2)[(a+1)(gamma+n-3) + epsilon + a delta]
//   S_n = (n-3)(gamma+delta+epsilon+n-4) + alpha beta
struct FourTermCoeffs {
  Complex P{};
  Complex Q{};
  Complex R{};
  Complex S{};
};

FourTermCoeffs four_term_coeffs(const HeunParams& p, Complex z0, long n);

// Local solution with data H(z0) = H0, H'(z0) = H0p, evaluated at z.
// The recurrence starts at n = 2 from c_{-1} = 0, c_0 = H0, c_1 = H0p.
// Requires z0 outside {0, 1, a} and |z - z0| < min{|z0|, |z0-1|, |z0-a|}.
EvalResult taylor_eval(const HeunParams& p, Complex z0, Complex H0, Complex H0p,
                       Complex z, const EvalOptions& opts = {});

}  // namespace heun
