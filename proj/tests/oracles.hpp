// Test-only reference machinery: closed-form oracle, brute-force coefficient
// generators kept independent of the library's summation path, and the seeded
// random parameter population.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "heun/core.hpp"

namespace oracle {

using heun::Complex;

// Hl(4, 9/4, 3/2, 3/2, 1/2, 2; z) = 2 / (sqrt(4-z) (1-z)), the reduction used
// as ground truth.  Real z > 4 takes the limit from Im z > 0, matching the
// library's on-cut convention.
inline heun::HeunParams reduced_params() {
  return heun::make_params(4.0, 2.25, 1.5, 1.5, 0.5, 2.0);
}

inline Complex sqrt4mz(Complex z) {
  if (z.imag() == 0.0 && z.real() > 4.0) {
    return Complex(0.0, -std::sqrt(z.real() - 4.0));
  }
  return std::sqrt(Complex(4.0) - z);
}

inline Complex h(Complex z) { return 2.0 / (sqrt4mz(z) * (1.0 - z)); }

inline Complex h_d(Complex z) {
  const Complex u = 0.5 / (4.0 - z) + 1.0 / (1.0 - z);
  return h(z) * u;
}

inline Complex h_dd(Complex z) {
  const Complex u = 0.5 / (4.0 - z) + 1.0 / (1.0 - z);
  const Complex up = 0.5 / ((4.0 - z) * (4.0 - z)) +
                     1.0 / ((1.0 - z) * (1.0 - z));
  return h(z) * (u * u + up);
}

// Lambda(z) = |f - h| / (1 + |h|) + |f' - h'| / (1 + |h'|).
inline double lambda_err(Complex f, Complex df, Complex z) {
  return std::abs(f - h(z)) / (1.0 + std::abs(h(z))) +
         std::abs(df - h_d(z)) / (1.0 + std::abs(h_d(z)));
}

// ddf solved from the equation given (z, f, df); valid at ordinary points.
inline Complex ode_ddf(const heun::HeunParams& p, Complex z, Complex f,
                       Complex df) {
  const Complex pc = p.gamma / z + p.delta / (z - 1.0) + p.epsilon / (z - p.a);
  const Complex qc =
      (p.alpha * p.beta * z - p.q) / (z * (z - 1.0) * (z - p.a));
  return -(pc * df + qc * f);
}

// ----- brute-force series coefficients (independent, unstabilized) -----

// b_n of the first solution, generic gamma.
inline std::vector<Complex> hl_coeffs(const heun::HeunParams& p, int order) {
  std::vector<Complex> b(static_cast<std::size_t>(order) + 1);
  b[0] = 1.0;
  for (int n = 1; n <= order; ++n) {
    const double dn = n;
    const Complex P = p.a * dn * (p.gamma - 1.0 + dn);
    const Complex Q = p.q + (dn - 1.0) * ((p.a + 1.0) * (p.gamma + dn - 2.0) +
                                          p.epsilon + p.a * p.delta);
    const Complex R = -(dn - 2.0 + p.alpha) * (dn - 2.0 + p.beta);
    const Complex bm2 = n >= 2 ? b[static_cast<std::size_t>(n - 2)] : Complex(0.0);
    b[static_cast<std::size_t>(n)] =
        (Q * b[static_cast<std::size_t>(n - 1)] + R * bm2) / P;
  }
  return b;
}

// (c_n, s_n) of the logarithmic first solution, gamma in {0} u Z^-.
struct LogCoeffs {
  std::vector<Complex> c;
  std::vector<Complex> s;
  long nsp = 0;
};

inline LogCoeffs hl_log_coeffs(const heun::HeunParams& p, int order) {
  LogCoeffs out;
  out.nsp = 1 - static_cast<long>(p.gamma.real());
  const long nsp = out.nsp;
  out.c.assign(static_cast<std::size_t>(order) + 1, Complex(0.0));
  out.s.assign(static_cast<std::size_t>(order) + 1, Complex(0.0));
  out.c[0] = 1.0;
  auto pqr = [&](long n) {
    const double dn = static_cast<double>(n);
    return std::array<Complex, 3>{
        p.a * dn * (p.gamma - 1.0 + dn),
        p.q + (dn - 1.0) * ((p.a + 1.0) * (p.gamma + dn - 2.0) + p.epsilon +
                            p.a * p.delta),
        -(dn - 2.0 + p.alpha) * (dn - 2.0 + p.beta)};
  };
  auto stu = [&](long n) {
    const double dn = static_cast<double>(n);
    return std::array<Complex, 3>{
        p.a * (1.0 - p.gamma - 2.0 * dn),
        p.epsilon + p.a * p.delta + (p.a + 1.0) * (p.gamma + 2.0 * dn - 3.0),
        Complex(4.0 - 2.0 * dn) - p.alpha - p.beta};
  };
  auto at = [](std::vector<Complex>& v, long i) -> Complex {
    return i >= 0 ? v[static_cast<std::size_t>(i)] : Complex(0.0);
  };
  for (long n = 1; n <= order; ++n) {
    const auto [P, Q, R] = pqr(n);
    if (n < nsp) {
      out.c[static_cast<std::size_t>(n)] =
          (Q * at(out.c, n - 1) + R * at(out.c, n - 2)) / P;
    } else if (n == nsp) {
      const Complex k1 =
          p.q - p.gamma * (p.epsilon + p.a * p.delta - p.a - 1.0);
      const Complex k2 =
          (1.0 + p.gamma) * (2.0 - p.delta - p.epsilon) + p.alpha * p.beta;
      out.s[static_cast<std::size_t>(n)] =
          (at(out.c, n - 1) * k1 - at(out.c, n - 2) * k2) /
          (p.a * static_cast<double>(nsp));
    } else {
      const auto [S, T, U] = stu(n);
      out.s[static_cast<std::size_t>(n)] =
          (Q * at(out.s, n - 1) + R * at(out.s, n - 2)) / P;
      out.c[static_cast<std::size_t>(n)] =
          (Q * at(out.c, n - 1) + R * at(out.c, n - 2) +
           S * at(out.s, n) + T * at(out.s, n - 1) + U * at(out.s, n - 2)) /
          P;
    }
  }
  return out;
}

// (t_n, d_n) of the logarithmic second solution for gamma = 1.
struct Gamma1Coeffs {
  std::vector<Complex> t;
  std::vector<Complex> d;
};

inline Gamma1Coeffs hs_gamma1_coeffs(const heun::HeunParams& p, int order) {
  Gamma1Coeffs out;
  out.t.assign(static_cast<std::size_t>(order) + 1, Complex(0.0));
  out.d.assign(static_cast<std::size_t>(order) + 1, Complex(0.0));
  out.t[0] = 1.0;
  auto at = [](std::vector<Complex>& v, long i) -> Complex {
    return i >= 0 ? v[static_cast<std::size_t>(i)] : Complex(0.0);
  };
  for (long n = 1; n <= order; ++n) {
    const double dn = static_cast<double>(n);
    const Complex P = p.a * dn * (p.gamma - 1.0 + dn);
    const Complex Q = p.q + (dn - 1.0) * ((p.a + 1.0) * (p.gamma + dn - 2.0) +
                                          p.epsilon + p.a * p.delta);
    const Complex R = -(dn - 2.0 + p.alpha) * (dn - 2.0 + p.beta);
    const Complex S = p.a * (1.0 - p.gamma - 2.0 * dn);
    const Complex T =
        p.epsilon + p.a * p.delta + (p.a + 1.0) * (p.gamma + 2.0 * dn - 3.0);
    const Complex U = Complex(4.0 - 2.0 * dn) - p.alpha - p.beta;
    out.t[static_cast<std::size_t>(n)] =
        (Q * at(out.t, n - 1) + R * at(out.t, n - 2)) / P;
    out.d[static_cast<std::size_t>(n)] =
        (Q * at(out.d, n - 1) + R * at(out.d, n - 2) + S * at(out.t, n) +
         T * at(out.t, n - 1) + U * at(out.t, n - 2)) /
        P;
  }
  return out;
}

// Horner evaluation of sum coeff[n] z^n and its derivative.
inline std::pair<Complex, Complex> horner(const std::vector<Complex>& coeff,
                                          Complex z) {
  Complex f = 0.0, df = 0.0;
  for (std::size_t i = coeff.size(); i-- > 0;) {
    df = df * z + f;
    f = f * z + coeff[i];
  }
  return {f, df};
}

// ----- seeded random population -----
// |a| in [0.3, 3] with |a-1| >= 0.15, exponent parameters in the disc
// |.| <= 2 with dist(gamma, {0} u Z^-) >= 0.1, |q| <= 2.

class Population {
 public:
  explicit Population(std::uint64_t seed) : rng_(seed) {}

  Complex disc(double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    for (;;) {
      const Complex z(u(rng_), u(rng_));
      if (std::abs(z) <= radius) return z;
    }
  }

  heun::HeunParams next() {
    std::uniform_real_distribution<double> ur(0.3, 3.0);
    std::uniform_real_distribution<double> ua(-3.14159265358979323846,
                                              3.14159265358979323846);
    for (;;) {
      const Complex a = std::polar(ur(rng_), ua(rng_));
      if (std::abs(a - 1.0) < 0.15) continue;
      const Complex q = disc(2.0);
      const Complex alpha = disc(2.0);
      const Complex beta = disc(2.0);
      const Complex delta = disc(2.0);
      Complex gamma;
      for (;;) {
        gamma = disc(2.0);
        const double dist0 = std::abs(gamma);
        const double dist1 = std::abs(gamma + 1.0);
        const double dist2 = std::abs(gamma + 2.0);
        if (std::min({dist0, dist1, dist2}) >= 0.1) break;
      }
      return heun::make_params(a, q, alpha, beta, gamma, delta);
    }
  }

  std::vector<heun::HeunParams> sample(int count) {
    std::vector<heun::HeunParams> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
