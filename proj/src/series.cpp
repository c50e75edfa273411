#include "heun/series.hpp"

#include <cmath>
#include <limits>

#include "sum_engine.hpp"

namespace heun {

namespace {

long nsp_of(const HeunParams& p) {
  return 1 - static_cast<long>(p.gamma.real());
}

}  // namespace

ThreeTermCoeffs recurrence_pqr(const HeunParams& p, long n) {
  const double dn = static_cast<double>(n);
  ThreeTermCoeffs c;
  c.P = p.a * dn * (p.gamma - 1.0 + dn);
  c.Q = p.q + (dn - 1.0) * ((p.a + 1.0) * (p.gamma + dn - 2.0) + p.epsilon +
                            p.a * p.delta);
  c.R = -(dn - 2.0 + p.alpha) * (dn - 2.0 + p.beta);
  return c;
}

LogCoupling log_coupling(const HeunParams& p, long n) {
  const double dn = static_cast<double>(n);
  LogCoupling c;
  c.S = p.a * (1.0 - p.gamma - 2.0 * dn);
  c.T = p.epsilon + p.a * p.delta + (p.a + 1.0) * (p.gamma + 2.0 * dn - 3.0);
  c.U = 4.0 - 2.0 * dn - p.alpha - p.beta;
  return c;
}

HeunParams transform_hs(const HeunParams& p) {
  return make_params(p.a,
                     p.q - (p.gamma - 1.0) * (p.epsilon + p.a * p.delta),
                     p.beta - p.gamma + 1.0, p.alpha - p.gamma + 1.0,
                     2.0 - p.gamma, p.delta);
}

namespace detail {

namespace {

// Generic three-term summation via the stabilized terms t_n = b_n z^n,
// P_n t_n = z Q_n t_{n-1} + z^2 R_n t_{n-2}.
EvalResult hl_series_generic(const HeunParams& p, Complex z,
                             const EvalOptions& opts) {
  EvalResult out;
  if (z == Complex(0.0)) {
    out.f = 1.0;
    out.df = p.q / (p.a * p.gamma);
    out.r = 0.0;
    out.n_terms = 1;
    out.route = Route::Origin;
    return out;
  }
  const Complex z2 = z * z;
  Complex t_prev2 = 0.0;
  Complex t_prev = 1.0;  // t_0 = b_0 = 1
  SumState sums;
  sums.add(0, t_prev);
  Terminator stop;
  Complex t{};
  long n = 1;
  for (;; ++n) {
    if (n > opts.max_terms) {
      throw NonConvergence("power series about 0 did not converge",
                           {0.0, n, z, Route::SeriesZero});
    }
    const ThreeTermCoeffs c = recurrence_pqr(p, n);
    t = (z * c.Q * t_prev + z2 * c.R * t_prev2) / c.P;
    sums.add(n, t);
    t_prev2 = t_prev;
    t_prev = t;
    if (stop.done(sums.s1, std::abs(t))) break;
  }
  out.f = sums.s0;
  out.df = sums.s1 / z;
  const Complex ddf = sums.s2 / z2;
  out.n_terms = n + 1;
  out.r = error_indicator(p, z, out.f, out.df, ddf, n, std::abs(t),
                          std::abs(out.f));
  out.route = Route::SeriesZero;
  return out;
}

// Series with a logarithmic part,
//   f = sum_{n != nsp} c_n z^n + log(z) sum_{n >= nsp} s_n z^n,
// nsp = 1 - gamma >= 1, c_nsp fixed to 0.  `theta` selects the branch of
// log(z).
EvalResult hl_series_log(const HeunParams& p, Complex z,
                         const EvalOptions& opts, double theta) {
  const long nsp = nsp_of(p);
  EvalResult out;
  if (z == Complex(0.0)) {
    out.f = 1.0;
    out.n_terms = 1;
    out.route = Route::Origin;
    if (nsp >= 2) {
      out.df = p.q / (p.a * p.gamma);  // c_1; P_1 = a*gamma != 0 here
      out.r = 0.0;
    } else {
      // the s_1 z log z term has unbounded derivative at 0
      const double nan = std::numeric_limits<double>::quiet_NaN();
      out.df = Complex(nan, nan);
      out.r = std::numeric_limits<double>::infinity();
    }
    return out;
  }
  const Complex L(std::log(std::abs(z)), theta);
  const Complex z2 = z * z;
  const Complex k1 = p.q - p.gamma * (p.epsilon + p.a * p.delta - p.a - 1.0);
  const Complex k2 =
      (1.0 + p.gamma) * (2.0 - p.delta - p.epsilon) + p.alpha * p.beta;

  Complex c_m1 = 0.0, c_0 = 1.0;  // trailing c-stream values
  Complex s_m1 = 0.0, s_0 = 0.0;  // trailing s-stream values
  SumState cs, ss;
  cs.add(0, c_0);
  Terminator stop;
  double last_mag = 1.0;
  long n = 1;
  for (;; ++n) {
    if (n > opts.max_terms) {
      throw NonConvergence("logarithmic series about 0 did not converge",
                           {0.0, n, z, Route::SeriesZero});
    }
    const ThreeTermCoeffs c = recurrence_pqr(p, n);
    Complex cnew, snew;
    if (n < nsp) {
      snew = 0.0;
      cnew = (z * c.Q * c_0 + z2 * c.R * c_m1) / c.P;
    } else if (n == nsp) {
      // P_nsp = 0; the log stream starts here and c_nsp is fixed to 0
      snew = (c_0 * z * k1 - c_m1 * z2 * k2) / (p.a * static_cast<double>(nsp));
      cnew = 0.0;
    } else {
      const LogCoupling lc = log_coupling(p, n);
      snew = (z * c.Q * s_0 + z2 * c.R * s_m1) / c.P;
      cnew = (z * c.Q * c_0 + z2 * c.R * c_m1 + lc.S * snew + z * lc.T * s_0 +
              z2 * lc.U * s_m1) /
             c.P;
    }
    cs.add(n, cnew);
    ss.add(n, snew);
    c_m1 = c_0;
    c_0 = cnew;
    s_m1 = s_0;
    s_0 = snew;
    last_mag = std::abs(cnew + L * snew);
    const Complex deriv_num = cs.s1 + L * ss.s1 + ss.s0;  // = z f'
    if (stop.done(deriv_num, last_mag)) break;
  }
  out.f = cs.s0 + L * ss.s0;
  out.df = (cs.s1 + L * ss.s1 + ss.s0) / z;
  const Complex ddf = (cs.s2 + L * ss.s2 + 2.0 * ss.s1 - ss.s0) / z2;
  out.n_terms = n + 1;
  out.r = error_indicator(p, z, out.f, out.df, ddf, n, last_mag,
                          std::abs(out.f));
  out.route = Route::SeriesZero;
  return out;
}

// Second solution for gamma = 1:
//   f = sum_{n >= 1} d_n z^n + log(z) sum_{n >= 0} t_n z^n,
// t_0 = 1, d_0 = 0, both streams coupled by the same relations as the
// logarithmic first solution.
EvalResult hs_series_gamma1(const HeunParams& p, Complex z,
                            const EvalOptions& opts, double theta) {
  const Complex L(std::log(std::abs(z)), theta);
  const Complex z2 = z * z;
  Complex t_m1 = 0.0, t_0 = 1.0;
  Complex d_m1 = 0.0, d_0 = 0.0;
  SumState ts, ds;
  ts.add(0, t_0);
  Terminator stop;
  double last_mag = std::abs(L);
  long n = 1;
  for (;; ++n) {
    if (n > opts.max_terms) {
      throw NonConvergence("logarithmic series about 0 did not converge",
                           {0.0, n, z, Route::SeriesZero});
    }
    const ThreeTermCoeffs c = recurrence_pqr(p, n);
    const LogCoupling lc = log_coupling(p, n);
    const Complex tnew = (z * c.Q * t_0 + z2 * c.R * t_m1) / c.P;
    const Complex dnew = (z * c.Q * d_0 + z2 * c.R * d_m1 + lc.S * tnew +
                          z * lc.T * t_0 + z2 * lc.U * t_m1) /
                         c.P;
    ds.add(n, dnew);
    ts.add(n, tnew);
    t_m1 = t_0;
    t_0 = tnew;
    d_m1 = d_0;
    d_0 = dnew;
    last_mag = std::abs(dnew + L * tnew);
    const Complex deriv_num = ds.s1 + L * ts.s1 + ts.s0;
    if (stop.done(deriv_num, last_mag)) break;
  }
  EvalResult out;
  out.f = ds.s0 + L * ts.s0;
  out.df = (ds.s1 + L * ts.s1 + ts.s0) / z;
  const Complex ddf = (ds.s2 + L * ts.s2 + 2.0 * ts.s1 - ts.s0) / z2;
  out.n_terms = n + 1;
  out.r = error_indicator(p, z, out.f, out.df, ddf, n, last_mag,
                          std::abs(out.f));
  out.route = Route::SeriesZero;
  return out;
}

}  // namespace

EvalResult series_hl0(const HeunParams& p, Complex z, const EvalOptions& opts,
                      double theta) {
  if (z != Complex(0.0) && std::abs(z) >= radius_zero(p)) {
    throw DomainError("point outside the convergence disc about 0");
  }
  if (gamma_nonpositive_integer(p.gamma)) {
    return hl_series_log(p, z, opts, theta);
  }
  return hl_series_generic(p, z, opts);
}

EvalResult series_hs0(const HeunParams& p, Complex z, const EvalOptions& opts,
                      double theta) {
  if (z == Complex(0.0)) {
    throw DomainError("second solution is not evaluated at z = 0");
  }
  if (std::abs(z) >= radius_zero(p)) {
    throw DomainError("point outside the convergence disc about 0");
  }
  if (p.gamma == Complex(1.0)) {
    return hs_series_gamma1(p, z, opts, theta);
  }
  // z^{1-gamma} Hl(transformed; z); the inner series may itself carry a
  // logarithm when 2 - gamma is a nonpositive integer
  const HeunParams pt = transform_hs(p);
  const EvalResult inner = series_hl0(pt, z, opts, theta);
  const Complex one_minus_g = 1.0 - p.gamma;
  const Complex prefactor =
      std::exp(one_minus_g * Complex(std::log(std::abs(z)), theta));
  EvalResult out;
  out.f = prefactor * inner.f;
  out.df = prefactor * (inner.df + one_minus_g / z * inner.f);
  out.r = std::abs(prefactor) * inner.r;
  out.n_terms = inner.n_terms;
  out.route = Route::SeriesZero;
  return out;
}

}  // namespace detail

EvalResult series_hl_at_zero(const HeunParams& p, Complex z,
                             const EvalOptions& opts) {
  return detail::series_hl0(p, z, opts, std::arg(z));
}

EvalResult series_hs_at_zero(const HeunParams& p, Complex z,
                             const EvalOptions& opts) {
  return detail::series_hs0(p, z, opts, std::arg(z));
}

}  // namespace heun
