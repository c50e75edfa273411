#include "heun/connection.hpp"

#include <bit>
#include <cmath>

namespace heun {

namespace {

int sign_up(double x) { return x < 0.0 ? -1 : +1; }

// Boundary resolution after a conformal map T: a point approached from
// Im > 0 maps to a point approached from the side of sign(Re T'(z)).
int side_after_map(Complex dTdz, int side) {
  return dTdz.real() < 0.0 ? -side : side;
}

struct Solve2Result {
  Complex c1{};
  Complex c2{};
};

// Cramer solve of [[m11,m12],[m21,m22]] [c1;c2] = [b1;b2] with a relative
// determinant guard.
Solve2Result solve2(Complex m11, Complex m12, Complex m21, Complex m22,
                    Complex b1, Complex b2) {
  const Complex det = m11 * m22 - m12 * m21;
  const double n1 = std::hypot(std::abs(m11), std::abs(m12));
  const double n2 = std::hypot(std::abs(m21), std::abs(m22));
  if (std::abs(det) < 1e-13 * n1 * n2) {
    throw IllConditioned("local solutions are numerically dependent "
                         "at the matching point");
  }
  Solve2Result out;
  out.c1 = (b1 * m22 - m12 * b2) / det;
  out.c2 = (m11 * b2 - b1 * m21) / det;
  return out;
}

constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;

}  // namespace

std::size_t ConnectionKeyHash::operator()(const ConnectionKey& k) const {
  std::size_t h = std::hash<int>()(static_cast<int>(k.kind) * 64 +
                                   static_cast<int>(k.site) * 8 +
                                   (k.region + 3));
  for (std::uint64_t b : k.bits) {
    h ^= std::hash<std::uint64_t>()(b) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

ConnectionKey make_connection_key(FunctionKind kind, Site site, int region,
                                  const HeunParams& p) {
  ConnectionKey key;
  key.kind = kind;
  key.site = site;
  key.region = region;
  const Complex values[6] = {p.a, p.q, p.alpha, p.beta, p.gamma, p.delta};
  for (int i = 0; i < 6; ++i) {
    key.bits[static_cast<std::size_t>(2 * i)] =
        std::bit_cast<std::uint64_t>(values[i].real());
    key.bits[static_cast<std::size_t>(2 * i + 1)] =
        std::bit_cast<std::uint64_t>(values[i].imag());
  }
  return key;
}

ConnectionCoefficients ConnectionCache::lookup_or_compute(
    const ConnectionKey& key,
    const std::function<ConnectionCoefficients()>& compute,
    bool* was_computed) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      if (was_computed != nullptr) *was_computed = false;
      return it->second;
    }
  }
  // compute outside the lock; errors propagate uncached
  const ConnectionCoefficients value = compute();
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = map_.try_emplace(key, value);
  if (was_computed != nullptr) *was_computed = inserted;
  return it->second;
}

bool ConnectionCache::has(const ConnectionKey& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.find(key) != map_.end();
}

void ConnectionCache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  map_.clear();
}

std::size_t ConnectionCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

HeunParams transform_near_one(const HeunParams& p) {
  return make_params(1.0 - p.a, p.alpha * p.beta - p.q, p.alpha, p.beta,
                     p.delta, p.gamma);
}

HeunParams transform_near_a(const HeunParams& p) {
  return make_params((p.a - 1.0) / p.a, p.alpha * p.beta - p.q / p.a, p.alpha,
                     p.beta, p.epsilon, p.gamma);
}

HeunParams transform_near_infinity(const HeunParams& p) {
  return make_params(1.0 / p.a,
                     (p.q + p.alpha * (p.delta - p.beta)) / p.a +
                         p.alpha * (p.epsilon - p.beta),
                     p.alpha, p.alpha - p.gamma + 1.0, p.alpha - p.beta + 1.0,
                     p.delta);
}

std::pair<int, double> sector_of(const HeunParams& p, Complex z) {
  if (std::abs(z) <= radius_infinity(p)) {
    throw DomainError("point is not in the exterior annulus");
  }
  const SectorMap map = make_sector_map(p.a);
  const int k = map.locate_strict(std::arg(z));
  if (k < 0) {
    throw OnCutOrSingular("arg z equals a cut direction");
  }
  return {k, map.sectors[static_cast<std::size_t>(k)].omega};
}

namespace {

std::pair<int, double> sector_with_side(const HeunParams& p, Complex z,
                                        int side) {
  const SectorMap map = make_sector_map(p.a);
  const double theta = std::arg(z);
  int k = map.locate_strict(theta);
  if (k < 0) {
    // boundary direction: arg(z + i side 0+) rotates by sign(Re z) * side
    const int rot = (z.real() < 0.0 ? -1 : +1) * side;
    k = map.locate(theta, rot);
  }
  return {k, map.sectors[static_cast<std::size_t>(k)].omega};
}

EvalResult basic_of_kind(const HeunParams& p, FunctionKind kind, Complex z,
                         const EvalOptions& opts, int side) {
  return detail::basic_eval(p, kind, z, opts, side);
}

}  // namespace

ConnectionCoefficients match_at_one(const HeunParams& p, FunctionKind kind,
                                    int region, const EvalOptions& opts) {
  const bool special = split_regions_near_one(p);
  double s;
  if (special) {
    s = region >= 0 ? 1.0 : -1.0;
  } else {
    s = p.a.imag() == 0.0 ? 0.0 : (p.a.imag() > 0.0 ? -1.0 : 1.0);
  }
  const Complex m1(0.5, s * kInvSqrt2);
  const HeunParams pt = transform_near_one(p);
  const EvalResult f0 = basic_of_kind(p, kind, m1, opts, +1);
  const EvalResult f1 = detail::basic_eval(pt, FunctionKind::HeunL, 1.0 - m1,
                                           opts, -1);
  const EvalResult f2 = detail::basic_eval(pt, FunctionKind::HeunS, 1.0 - m1,
                                           opts, -1);
  const Solve2Result sol =
      solve2(f1.f, f2.f, -f1.df, -f2.df, f0.f, f0.df);
  ConnectionCoefficients cc;
  cc.c1 = sol.c1;
  cc.c2 = sol.c2;
  cc.matched_at = m1;
  cc.r_match = std::abs(sol.c1) * f1.r + std::abs(sol.c2) * f2.r + f0.r;
  cc.n_match = f0.n_terms + f1.n_terms + f2.n_terms;
  return cc;
}

EvalResult eval_near_one(const HeunParams& p, FunctionKind kind, Complex z,
                         ConnectionCache& cache, const EvalOptions& opts,
                         int side) {
  if (z == Complex(1.0)) {
    throw SingularPoint("evaluation point is the singular point 1");
  }
  const int region = split_regions_near_one(p)
                         ? (z.imag() == 0.0 ? side : sign_up(z.imag()))
                         : 0;
  bool computed = false;
  const ConnectionCoefficients cc = cache.lookup_or_compute(
      make_connection_key(kind, Site::One, region, p),
      [&] { return match_at_one(p, kind, region, opts); }, &computed);
  const HeunParams pt = transform_near_one(p);
  const int inner_side = -side;  // d(1-z)/dz = -1
  const EvalResult f1 =
      detail::basic_eval(pt, FunctionKind::HeunL, 1.0 - z, opts, inner_side);
  const EvalResult f2 =
      detail::basic_eval(pt, FunctionKind::HeunS, 1.0 - z, opts, inner_side);
  EvalResult out;
  out.f = cc.c1 * f1.f + cc.c2 * f2.f;
  out.df = -cc.c1 * f1.df - cc.c2 * f2.df;
  out.r = std::abs(cc.c1) * f1.r + std::abs(cc.c2) * f2.r;
  out.n_terms = f1.n_terms + f2.n_terms + (computed ? cc.n_match : 0);
  out.route = Route::NearOne;
  out.used_cache = !computed;
  return out;
}

ConnectionCoefficients match_at_a(const HeunParams& p, FunctionKind kind,
                                  int region, const EvalOptions& opts) {
  const bool special = split_regions_near_a(p);
  Complex s;
  if (special) {
    s = Complex(region >= 0 ? 1.0 : -1.0, 0.0);
  } else if (p.a.imag() == 0.0) {
    s = Complex(0.0);  // a in (0,1): matching on the segment (0, a)
  } else {
    s = (p.a / std::abs(p.a)) * (p.a.imag() > 0.0 ? 1.0 : -1.0);
  }
  const Complex ma = p.a / 2.0 + Complex(0.0, 1.0) * s * kInvSqrt2;
  const HeunParams pt = transform_near_a(p);
  const Complex zeta = (p.a - ma) / p.a;
  const EvalResult f0 = basic_of_kind(p, kind, ma, opts, +1);
  const int inner_side = side_after_map(-1.0 / p.a, +1);
  const EvalResult f1 =
      detail::basic_eval(pt, FunctionKind::HeunL, zeta, opts, inner_side);
  const EvalResult f2 =
      detail::basic_eval(pt, FunctionKind::HeunS, zeta, opts, inner_side);
  // chain rule d/dz F((a-z)/a) = -(1/a) F' on both local solutions
  const Solve2Result sol = solve2(f1.f, f2.f, -f1.df / p.a, -f2.df / p.a,
                                  f0.f, f0.df);
  ConnectionCoefficients cc;
  cc.c1 = sol.c1;
  cc.c2 = sol.c2;
  cc.matched_at = ma;
  cc.r_match = std::abs(sol.c1) * f1.r + std::abs(sol.c2) * f2.r + f0.r;
  cc.n_match = f0.n_terms + f1.n_terms + f2.n_terms;
  return cc;
}

EvalResult eval_near_a(const HeunParams& p, FunctionKind kind, Complex z,
                       ConnectionCache& cache, const EvalOptions& opts,
                       int side) {
  if (z == p.a) {
    throw SingularPoint("evaluation point is the singular point a");
  }
  const int region = split_regions_near_a(p)
                         ? (z.imag() == 0.0 ? side : sign_up(z.imag()))
                         : 0;
  bool computed = false;
  const ConnectionCoefficients cc = cache.lookup_or_compute(
      make_connection_key(kind, Site::A, region, p),
      [&] { return match_at_a(p, kind, region, opts); }, &computed);
  const HeunParams pt = transform_near_a(p);
  const Complex zeta = (p.a - z) / p.a;
  const int inner_side = side_after_map(-1.0 / p.a, side);
  const EvalResult f1 =
      detail::basic_eval(pt, FunctionKind::HeunL, zeta, opts, inner_side);
  const EvalResult f2 =
      detail::basic_eval(pt, FunctionKind::HeunS, zeta, opts, inner_side);
  EvalResult out;
  out.f = cc.c1 * f1.f + cc.c2 * f2.f;
  out.df = -(cc.c1 * f1.df + cc.c2 * f2.df) / p.a;
  out.r = std::abs(cc.c1) * f1.r + std::abs(cc.c2) * f2.r;
  out.n_terms = f1.n_terms + f2.n_terms + (computed ? cc.n_match : 0);
  out.route = Route::NearA;
  out.used_cache = !computed;
  return out;
}

ConnectionCoefficients match_at_infinity(const HeunParams& p,
                                         FunctionKind kind, int sector,
                                         const EvalOptions& opts) {
  const SectorMap map = make_sector_map(p.a);
  const double omega =
      map.sectors[static_cast<std::size_t>(sector)].omega;
  const Complex m = std::polar(kCInfinity * radius_infinity(p), omega);
  const HeunParams pt = transform_near_infinity(p);
  const EvalResult f0 = basic_of_kind(p, kind, m, opts, +1);
  const EvalResult f1 =
      detail::basic_eval(pt, FunctionKind::HeunL, 1.0 / m, opts, +1);
  const EvalResult f2 =
      detail::basic_eval(pt, FunctionKind::HeunS, 1.0 / m, opts, +1);
  const Complex power = std::exp(-p.alpha * std::log(m));
  const Solve2Result sol = solve2(
      power * f1.f, power * f2.f,
      -power / m * (f1.df / m + p.alpha * f1.f),
      -power / m * (f2.df / m + p.alpha * f2.f), f0.f, f0.df);
  ConnectionCoefficients cc;
  cc.c1 = sol.c1;
  cc.c2 = sol.c2;
  cc.matched_at = m;
  cc.r_match = std::abs(sol.c1) * f1.r + std::abs(sol.c2) * f2.r + f0.r;
  cc.n_match = f0.n_terms + f1.n_terms + f2.n_terms;
  return cc;
}

EvalResult eval_near_infinity(const HeunParams& p, FunctionKind kind,
                              Complex z, ConnectionCache& cache,
                              const EvalOptions& opts, int side) {
  const auto [sector, omega] = sector_with_side(p, z, side);
  bool computed = false;
  const ConnectionCoefficients cc = cache.lookup_or_compute(
      make_connection_key(kind, Site::Infinity, sector, p),
      [&] { return match_at_infinity(p, kind, sector, opts); }, &computed);
  const HeunParams pt = transform_near_infinity(p);
  const Complex zeta = 1.0 / z;
  const int inner_side = side_after_map(-1.0 / (z * z), side);
  const EvalResult f1 =
      detail::basic_eval(pt, FunctionKind::HeunL, zeta, opts, inner_side);
  const EvalResult f2 =
      detail::basic_eval(pt, FunctionKind::HeunS, zeta, opts, inner_side);
  const Complex logz(std::log(std::abs(z)), detail::arg_with_side(z, side));
  const Complex power = std::exp(-p.alpha * logz);
  EvalResult out;
  out.f = power * (cc.c1 * f1.f + cc.c2 * f2.f);
  out.df = -power / z *
           (cc.c1 * (f1.df / z + p.alpha * f1.f) +
            cc.c2 * (f2.df / z + p.alpha * f2.f));
  out.r = std::abs(cc.c1 * power) * f1.r + std::abs(cc.c2 * power) * f2.r;
  out.n_terms = f1.n_terms + f2.n_terms + (computed ? cc.n_match : 0);
  out.route = Route::NearInfinity;
  out.used_cache = !computed;
  return out;
}

}  // namespace heun
