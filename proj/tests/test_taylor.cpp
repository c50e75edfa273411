#include <cmath>

#include "doctest.h"
#include "heun/series.hpp"
#include "heun/taylor.hpp"
#include "oracles.hpp"

using heun::Complex;

namespace {

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

}  // namespace

TEST_CASE("trivial expansions") {
  const auto p = oracle::reduced_params();
  const Complex z0(0.5, 0.0);
  auto r = heun::taylor_eval(p, z0, oracle::h(z0), oracle::h_d(z0), z0);
  CHECK(r.f == oracle::h(z0));
  CHECK(r.df == oracle::h_d(z0));
  CHECK(r.n_terms == 1);

  // the zero solution stays zero
  r = heun::taylor_eval(p, z0, 0.0, 0.0, Complex(0.6, 0.1));
  CHECK(r.f == Complex(0.0));
  CHECK(r.df == Complex(0.0));
}

TEST_CASE("re-expansion reproduces the closed form") {
  const auto p = oracle::reduced_params();
  const Complex z0(0.5, 0.0);
  const auto r =
      heun::taylor_eval(p, z0, oracle::h(z0), oracle::h_d(z0), Complex(0.8));
  CHECK(r.f.real() == doctest::Approx(5.5901699437494742).epsilon(1e-12));
  CHECK(rel_err(r.f, oracle::h(Complex(0.8))) <= 1e-12);
  CHECK(rel_err(r.df, oracle::h_d(Complex(0.8))) <= 1e-12);
  CHECK(r.r <= 1e-10);
}

TEST_CASE("re-expansion consistent with the origin series for random sets") {
  oracle::Population pop(2025);
  int tested = 0;
  while (tested < 25) {
    const auto p = pop.next();
    const double r0 = heun::radius_zero(p);
    const Complex z0 = 0.35 * r0 * std::polar(1.0, 0.9);
    const auto seed = heun::series_hl_at_zero(p, z0);
    const double rad = std::min(
        {std::abs(z0), std::abs(z0 - 1.0), std::abs(z0 - p.a)});
    const Complex z = z0 + 0.4 * rad * std::polar(1.0, -2.0);
    if (std::abs(z) >= 0.95 * r0) continue;
    const auto direct = heun::series_hl_at_zero(p, z);
    const auto stepped = heun::taylor_eval(p, z0, seed.f, seed.df, z);
    CHECK(rel_err(stepped.f, direct.f) <= 1e-11);
    CHECK(rel_err(stepped.df, direct.df) <= 1e-11);
    ++tested;
  }
}

TEST_CASE("linearity under power-of-two scaling") {
  const auto p = oracle::reduced_params();
  const Complex z0(0.5, 0.2);
  const Complex z(0.62, 0.27);
  const Complex H0 = oracle::h(z0);
  const Complex H0p = oracle::h_d(z0);
  const auto base = heun::taylor_eval(p, z0, H0, H0p, z);
  for (double lam : {2.0, 0.25, 1024.0}) {
    const auto scaled = heun::taylor_eval(p, z0, lam * H0, lam * H0p, z);
    CHECK(std::abs(scaled.f - lam * base.f) <=
          4 * heun::kMachineEps * std::abs(lam * base.f));
    CHECK(std::abs(scaled.df - lam * base.df) <=
          4 * heun::kMachineEps * std::abs(lam * base.df));
  }
}

TEST_CASE("superposition of initial data") {
  const auto p = oracle::reduced_params();
  const Complex z0(0.45, -0.15);
  const double rad =
      std::min({std::abs(z0), std::abs(z0 - 1.0), std::abs(z0 - p.a)});
  const Complex z = z0 + 0.5 * rad * std::polar(1.0, 0.7);
  const Complex H0(0.8, -0.3), H0p(-0.2, 1.1);
  const auto both = heun::taylor_eval(p, z0, H0, H0p, z);
  const auto only_f = heun::taylor_eval(p, z0, H0, 0.0, z);
  const auto only_d = heun::taylor_eval(p, z0, 0.0, H0p, z);
  CHECK(rel_err(only_f.f + only_d.f, both.f) <= 1e-13);
  CHECK(rel_err(only_f.df + only_d.df, both.df) <= 1e-13);
}

TEST_CASE("two half steps equal one full step") {
  const auto p = oracle::reduced_params();
  const Complex z0(0.5, 0.0);
  const double rad = 0.5;
  const Complex z = z0 + 0.5 * rad * std::polar(1.0, 0.3);
  const Complex mid = z0 + 0.5 * (z - z0);
  const Complex H0 = oracle::h(z0);
  const Complex H0p = oracle::h_d(z0);
  const auto full = heun::taylor_eval(p, z0, H0, H0p, z);
  const auto half1 = heun::taylor_eval(p, z0, H0, H0p, mid);
  const auto half2 = heun::taylor_eval(p, mid, half1.f, half1.df, z);
  CHECK(rel_err(half2.f, full.f) <= 1e-12);
  CHECK(rel_err(half2.df, full.df) <= 1e-12);
}

TEST_CASE("taylor domain errors") {
  const auto p = oracle::reduced_params();
  CHECK_THROWS_AS(heun::taylor_eval(p, Complex(1.0), 1.0, 0.0, Complex(1.1)),
                  heun::DomainError);
  CHECK_THROWS_AS(heun::taylor_eval(p, Complex(4.0), 1.0, 0.0, Complex(4.1)),
                  heun::DomainError);
  // radius: min distance from 0.5 is 0.5
  CHECK_THROWS_AS(
      heun::taylor_eval(p, Complex(0.5), 1.0, 0.0, Complex(1.01, 0.0)),
      heun::DomainError);
}
