#include <cmath>

#include "doctest.h"
#include "heun/series.hpp"
#include "oracles.hpp"

using heun::Complex;

namespace {

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

}  // namespace

TEST_CASE("three-term recurrence coefficients") {
  const auto p = oracle::reduced_params();
  auto c = heun::recurrence_pqr(p, 1);
  CHECK(c.P == Complex(2.0));
  CHECK(c.Q == Complex(2.25));
  CHECK(c.R == Complex(-0.25));
  c = heun::recurrence_pqr(p, 0);
  CHECK(c.P == Complex(0.0));
  c = heun::recurrence_pqr(p, 2);
  CHECK(c.P == Complex(12.0));
}

TEST_CASE("series at the origin: normalization and first derivative") {
  const auto p = oracle::reduced_params();
  const auto r = heun::series_hl_at_zero(p, 0.0);
  CHECK(r.f == Complex(1.0));
  CHECK(r.df == Complex(1.125));
  CHECK(r.r == 0.0);

  // first derivative at 0 equals q/(a gamma) for the random population
  oracle::Population pop(4242);
  for (const auto& ps : pop.sample(40)) {
    if (heun::gamma_nonpositive_integer(ps.gamma)) continue;
    const auto r0 = heun::series_hl_at_zero(ps, 0.0);
    CHECK(r0.f == Complex(1.0));
    const Complex want = ps.q / (ps.a * ps.gamma);
    CHECK(std::abs(r0.df - want) <=
          8 * heun::kMachineEps * (1.0 + std::abs(want)));
  }
}

TEST_CASE("series matches the closed form inside the disc") {
  const auto p = oracle::reduced_params();
  for (const Complex z : {Complex(0.5, 0.0), Complex(0.2, 0.3),
                          Complex(-0.4, 0.0), Complex(0.0, 0.45)}) {
    const auto r = heun::series_hl_at_zero(p, z);
    CHECK(rel_err(r.f, oracle::h(z)) <= 1e-13);
    CHECK(rel_err(r.df, oracle::h_d(z)) <= 1e-13);
    CHECK(r.r <= 1e-11);
    CHECK(r.n_terms >= 2);
  }
  // frozen reference values
  const auto r = heun::series_hl_at_zero(p, 0.5);
  CHECK(r.f.real() == doctest::Approx(2.1380899352993951).epsilon(1e-13));
  CHECK(r.df.real() == doctest::Approx(4.5816212899272752).epsilon(1e-13));
}

TEST_CASE("brute-force equivalence near the origin") {
  // order-30 Horner evaluation of independently generated coefficients
  oracle::Population pop(777);
  for (const auto& p : pop.sample(30)) {
    if (heun::gamma_nonpositive_integer(p.gamma)) continue;
    const double r0 = heun::radius_zero(p);
    const Complex z = 0.1 * r0 * std::polar(1.0, 1.1);
    const auto coeffs = oracle::hl_coeffs(p, 30);
    const auto [bf, bdf] = oracle::horner(coeffs, z);
    const auto r = heun::series_hl_at_zero(p, z);
    CHECK(rel_err(r.f, bf) <= 1e-13);
    CHECK(rel_err(r.df, bdf) <= 1e-13);
  }
}

TEST_CASE("logarithmic series for nonpositive integer gamma") {
  // gamma = 0 example: the log stream starts with s_1 = q / a = 1/2
  const auto p = heun::make_params(2.0, 1.0, 1.0, 1.0, 0.0, 1.0);
  const auto lc = oracle::hl_log_coeffs(p, 30);
  CHECK(lc.nsp == 1);
  CHECK(lc.s[1] == Complex(0.5));
  CHECK(lc.c[1] == Complex(0.0));  // c_nsp fixed to 0

  // the library value agrees with the brute-force evaluation of
  // sum c_n z^n + log(z) sum s_n z^n
  for (const Complex z : {Complex(0.15, 0.1), Complex(-0.08, 0.05),
                          Complex(0.05, -0.12)}) {
    const auto [cf, cdf] = oracle::horner(lc.c, z);
    const auto [sf, sdf] = oracle::horner(lc.s, z);
    const Complex L = std::log(z);
    const Complex want_f = cf + L * sf;
    const Complex want_df = cdf + L * sdf + sf / z;
    const auto r = heun::series_hl_at_zero(p, z);
    CHECK(rel_err(r.f, want_f) <= 1e-13);
    CHECK(rel_err(r.df, want_df) <= 1e-13);
  }

  // value at the origin stays normalized; the derivative diverges for nsp = 1
  const auto r0 = heun::series_hl_at_zero(p, 0.0);
  CHECK(r0.f == Complex(1.0));
  CHECK(std::isnan(r0.df.real()));
  CHECK(std::isinf(r0.r));

  // gamma = -1: finite derivative c_1 = q/(a gamma)
  const auto pm1 = heun::make_params(2.0, 0.8, 1.0, 1.0, -1.0, 1.0);
  const auto rm1 = heun::series_hl_at_zero(pm1, 0.0);
  CHECK(rm1.f == Complex(1.0));
  CHECK(rm1.df == pm1.q / (pm1.a * pm1.gamma));

  // f -> 1 along rays; the leading correction is (c_1 + s_1 log z) z
  for (double t : {1e-3, 1e-5}) {
    const Complex z(t, t);
    const auto rr = heun::series_hl_at_zero(p, z);
    CHECK(std::abs(rr.f - 1.0) <=
          2.0 * std::abs(z) * (1.0 + std::abs(std::log(std::abs(z)))));
  }
}

TEST_CASE("second solution via the exponent transform") {
  const auto p = oracle::reduced_params();
  const auto pt = heun::transform_hs(p);
  CHECK(pt.q == Complex(7.0));
  CHECK(pt.alpha == Complex(2.0));
  CHECK(pt.beta == Complex(2.0));
  CHECK(pt.gamma == Complex(1.5));
  CHECK(pt.delta == Complex(2.0));

  // Hs = z^{1-gamma} Hl(transformed), cross-checked against the direct route
  for (const Complex z : {Complex(0.3, 0.0), Complex(0.1, 0.25)}) {
    const auto inner = heun::series_hl_at_zero(pt, z);
    const Complex pref = std::pow(z, Complex(0.5));
    const auto r = heun::series_hs_at_zero(p, z);
    CHECK(rel_err(r.f, pref * inner.f) <= 1e-13);
    CHECK(rel_err(r.df, pref * (inner.df + 0.5 / z * inner.f)) <= 1e-13);
  }

  // z -> 0 normalization: z^{gamma-1} f -> 1
  const Complex zs(1e-6, 0.0);
  const auto rs = heun::series_hs_at_zero(p, zs);
  CHECK(std::abs(rs.f * std::pow(zs, Complex(-0.5)) - 1.0) <= 1e-5);

  CHECK_THROWS_AS(heun::series_hs_at_zero(p, 0.0), heun::DomainError);
}

TEST_CASE("second solution for nonpositive integer gamma starts at z^nsp") {
  const auto p = heun::make_params(2.0, 0.7, 0.9, 1.1, -1.0, 0.8);  // nsp = 2
  const Complex z(1e-4, 0.0);
  const auto r = heun::series_hs_at_zero(p, z);
  CHECK(std::abs(r.f / (z * z) - 1.0) <= 1e-3);
}

TEST_CASE("second solution for gamma = 1") {
  const auto p = heun::make_params(3.0, 0.5, 0.7, -0.3, 1.0, 0.6);
  // brute-force evaluation of sum d_n z^n + log(z) sum t_n z^n
  const auto g1 = oracle::hs_gamma1_coeffs(p, 40);
  for (const Complex z : {Complex(0.2, 0.15), Complex(-0.1, 0.2)}) {
    const auto [df_, ddf_] = oracle::horner(g1.d, z);
    const auto [tf, tdf] = oracle::horner(g1.t, z);
    const Complex L = std::log(z);
    const auto r = heun::series_hs_at_zero(p, z);
    CHECK(rel_err(r.f, df_ + L * tf) <= 1e-13);
    CHECK(rel_err(r.df, ddf_ + L * tdf + tf / z) <= 1e-13);
  }

  // truncation at order 2 approximates the function at z = 1e-4
  const auto trunc = oracle::hs_gamma1_coeffs(p, 2);
  const Complex z(1e-4, 0.0);
  const Complex want = (trunc.d[1] * z + trunc.d[2] * z * z) +
                       std::log(z) * (1.0 + trunc.t[1] * z + trunc.t[2] * z * z);
  const auto r = heun::series_hs_at_zero(p, z);
  CHECK(std::abs(r.f - want) <= 1e-10);
}

TEST_CASE("series error paths") {
  const auto p = oracle::reduced_params();
  CHECK_THROWS_AS(heun::series_hl_at_zero(p, Complex(1.0, 0.2)),
                  heun::DomainError);
  heun::EvalOptions tight;
  tight.max_terms = 5;
  CHECK_THROWS_AS(heun::series_hl_at_zero(p, Complex(0.45, 0.0), tight),
                  heun::NonConvergence);
}

TEST_CASE("termination survives an exactly-zero early coefficient") {
  // q = 0 makes b_1 = 0; the sum must continue past it
  const auto p = heun::make_params(4.0, 0.0, 1.5, 1.5, 0.5, 2.0);
  const Complex z(0.3, 0.0);
  const auto coeffs = oracle::hl_coeffs(p, 40);
  CHECK(coeffs[1] == Complex(0.0));
  CHECK(coeffs[2] != Complex(0.0));
  const auto [bf, bdf] = oracle::horner(coeffs, z);
  const auto r = heun::series_hl_at_zero(p, z);
  CHECK(r.n_terms > 5);
  CHECK(rel_err(r.f, bf) <= 1e-13);
  CHECK(rel_err(r.df, bdf) <= 1e-13);
}
