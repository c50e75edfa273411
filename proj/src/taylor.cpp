#include "heun/taylor.hpp"

#include <algorithm>
#include <cmath>

#include "sum_engine.hpp"

namespace heun {

FourTermCoeffs four_term_coeffs(const HeunParams& p, Complex z0, long n) {
  const double dn = static_cast<double>(n);
  const Complex gde = p.gamma + p.delta + p.epsilon;
  const Complex ead = p.epsilon + p.a * p.delta;
  FourTermCoeffs c;
  c.P = -dn * (dn - 1.0) * z0 * (z0 - 1.0) * (z0 - p.a);
  c.Q = (dn - 1.0) *
        ((gde + 3.0 * (dn - 2.0)) * z0 * z0 +
         ((p.a + 1.0) * (4.0 - 2.0 * dn - p.gamma) - ead) * z0 +
         p.a * (p.gamma + dn - 2.0));
  c.R = ((dn - 2.0) * (2.0 * gde + 3.0 * (dn - 3.0)) + p.alpha * p.beta) * z0 -
        p.q - (dn - 2.0) * ((p.a + 1.0) * (p.gamma + dn - 3.0) + ead);
  c.S = (dn - 3.0) * (gde + dn - 4.0) + p.alpha * p.beta;
  return c;
}

EvalResult taylor_eval(const HeunParams& p, Complex z0, Complex H0, Complex H0p,
                       Complex z, const EvalOptions& opts) {
  if (z0 == Complex(0.0) || z0 == Complex(1.0) || z0 == p.a) {
    throw DomainError("expansion point coincides with a singular point");
  }
  const double radius = std::min(
      {std::abs(z0), std::abs(z0 - 1.0), std::abs(z0 - p.a)});
  const Complex w = z - z0;
  if (std::abs(w) >= radius) {
    throw DomainError("target outside the local convergence disc");
  }
  EvalResult out;
  if (w == Complex(0.0)) {
    out.f = H0;
    out.df = H0p;
    out.r = 0.0;
    out.n_terms = 1;
    out.route = Route::Basic;
    return out;
  }
  const Complex w2 = w * w;
  const Complex w3 = w2 * w;
  // stabilized terms t_n = c_n w^n; recurrence applied for n >= 2 from
  // t_{-1} = 0, t_0 = H0, t_1 = H0' w
  Complex t3 = 0.0;
  Complex t2 = H0;
  Complex t1 = H0p * w;
  detail::SumState sums;
  sums.add(0, t2);
  sums.add(1, t1);
  detail::Terminator stop;
  Complex t{};
  long n = 2;
  for (;; ++n) {
    if (n > opts.max_terms) {
      throw NonConvergence("local Taylor series did not converge",
                           {0.0, n, z, Route::Basic});
    }
    const FourTermCoeffs c = four_term_coeffs(p, z0, n);
    t = (w * c.Q * t1 + w2 * c.R * t2 + w3 * c.S * t3) / c.P;
    sums.add(n, t);
    t3 = t2;
    t2 = t1;
    t1 = t;
    if (stop.done(sums.s1, std::abs(t))) break;
  }
  out.f = sums.s0;
  out.df = sums.s1 / w;
  const Complex ddf = sums.s2 / w2;
  out.n_terms = n + 1;
  out.r = error_indicator(p, z, out.f, out.df, ddf, n, std::abs(t),
                          std::abs(out.f));
  out.route = Route::Basic;
  return out;
}

}  // namespace heun
