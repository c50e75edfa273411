#include "heun/core.hpp"

#include <algorithm>
#include <cmath>

namespace heun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// sign with the upper-limit convention sign(0) = +1
int sign_up(double x) { return x < 0.0 ? -1 : +1; }

}  // namespace

std::string to_string(Route route) {
  switch (route) {
    case Route::Origin: return "origin";
    case Route::SeriesZero: return "series0";
    case Route::Basic: return "basic";
    case Route::NearOne: return "near-one";
    case Route::NearA: return "near-a";
    case Route::NearInfinity: return "near-inf";
    case Route::OnCut: return "oncut";
    case Route::PathEval: return "path";
    case Route::Skipped: return "skipped";
  }
  return "unknown";
}

HeunParams make_params(Complex a, Complex q, Complex alpha, Complex beta,
                       Complex gamma, Complex delta) {
  if (!finite(a) || !finite(q) || !finite(alpha) || !finite(beta) ||
      !finite(gamma) || !finite(delta)) {
    throw InvalidParams("heun parameters must be finite");
  }
  if (a == Complex(0.0, 0.0) || a == Complex(1.0, 0.0)) {
    throw InvalidParams("the singular point a must differ from 0 and 1");
  }
  HeunParams p;
  p.a = a;
  p.q = q;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  p.epsilon = alpha + beta + Complex(1.0) - gamma - delta;
  if (!finite(p.epsilon)) {
    throw InvalidParams("derived epsilon is not finite");
  }
  return p;
}

BranchCutSet branch_cuts(const HeunParams& p) {
  BranchCutSet cuts;
  cuts.b0 = {Complex(0.0), kPi};
  cuts.b1 = {Complex(1.0), 0.0};
  cuts.ba = {p.a, std::arg(p.a)};
  return cuts;
}

bool gamma_nonpositive_integer(Complex gamma) {
  if (gamma.imag() != 0.0) return false;
  const double g = gamma.real();
  return g <= 0.0 && g == std::nearbyint(g);
}

bool zero_branch_point(const HeunParams& p, FunctionKind kind) {
  const bool gnpi = gamma_nonpositive_integer(p.gamma);
  return kind == FunctionKind::HeunL ? gnpi : !gnpi;
}

bool on_cut_b0(Complex z) { return z.imag() == 0.0 && z.real() < 0.0; }

bool on_cut_b1(Complex z) { return z.imag() == 0.0 && z.real() > 1.0; }

bool on_cut_ba(const HeunParams& p, Complex z) {
  // the ray from a in direction arg(a) is {s*a : s >= 1}
  const Complex w = z * std::conj(p.a);
  const double aa = std::norm(p.a);
  return w.imag() == 0.0 && w.real() >= aa && z != p.a;
}

double radius_one(const HeunParams& p) {
  return std::min(1.0, std::abs(p.a - 1.0));
}

double radius_a(const HeunParams& p) {
  return std::min(std::abs(p.a), std::abs(1.0 - p.a));
}

double radius_infinity(const HeunParams& p) {
  return std::max(1.0, std::abs(p.a));
}

double radius_zero(const HeunParams& p) {
  return std::min(1.0, std::abs(p.a));
}

int SectorMap::locate_strict(double theta) const {
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const Sector& s = sectors[k];
    double t = theta;
    if (t <= s.lo) t += 2.0 * kPi;
    if (t > s.lo && t < s.hi) return static_cast<int>(k);
    if (t == s.lo || t == s.hi) return -1;
  }
  return -1;
}

int SectorMap::locate(double theta, int rot) const {
  const int strict = locate_strict(theta);
  if (strict >= 0) return strict;
  // theta is a boundary direction: step to the neighbouring sector in the
  // requested rotational direction (+1 counterclockwise, -1 clockwise)
  const int n = static_cast<int>(sectors.size());
  for (int k = 0; k < n; ++k) {
    const double lo = sectors[k].lo;
    if (theta == lo || theta + 2.0 * kPi == lo || theta - 2.0 * kPi == lo) {
      return rot > 0 ? k : (k + n - 1) % n;
    }
  }
  return 0;  // unreachable: every boundary is some sector's lo
}

SectorMap make_sector_map(Complex a) {
  const double psi = std::arg(a);
  std::vector<double> dirs = {0.0, kPi};
  if (psi != 0.0 && psi != kPi) dirs.push_back(psi);
  std::sort(dirs.begin(), dirs.end());
  SectorMap map;
  const std::size_t n = dirs.size();
  for (std::size_t k = 0; k < n; ++k) {
    Sector s;
    s.lo = dirs[k];
    s.hi = (k + 1 < n) ? dirs[k + 1] : dirs[0] + 2.0 * kPi;
    double mid = 0.5 * (s.lo + s.hi);
    if (mid > kPi) mid -= 2.0 * kPi;
    s.omega = mid;
    map.sectors.push_back(s);
  }
  return map;
}

namespace {

// distance from w to the ray {origin + t e^{i theta} : t >= 0}
double ray_distance(Complex w, Complex origin, double theta) {
  const Complex d = w - origin;
  const double t = (d * std::polar(1.0, -theta)).real();
  if (t <= 0.0) return std::abs(d);
  return std::abs(d - std::polar(t, theta));
}

}  // namespace

bool split_regions_near_one(const HeunParams& p) {
  // the cut from a passes within reach of the relaxed disc around 1
  return ray_distance(Complex(1.0), p.a, std::arg(p.a)) <
         kNearRadiusCached * radius_one(p);
}

bool split_regions_near_a(const HeunParams& p) {
  const double to_b1 =
      p.a.real() >= 1.0 ? std::abs(p.a.imag()) : std::abs(p.a - 1.0);
  const double to_b0 = p.a.real() <= 0.0 ? std::abs(p.a.imag()) : std::abs(p.a);
  return std::min(to_b0, to_b1) < kNearRadiusCached * radius_a(p);
}

int region_near_one(const HeunParams& p, Complex z) {
  return split_regions_near_one(p) ? sign_up(z.imag()) : 0;
}

int region_near_a(const HeunParams& p, Complex z) {
  return split_regions_near_a(p) ? sign_up(z.imag()) : 0;
}

PointClass classify(const HeunParams& p, Complex z,
                    const ConnectionCacheView& cache, bool zero_cut) {
  PointClass pc;
  if (z == Complex(0.0)) {
    pc.tag = PointClass::Tag::Singular;
    pc.singular_which = 0;
    return pc;
  }
  if (z == Complex(1.0)) {
    pc.tag = PointClass::Tag::Singular;
    pc.singular_which = 1;
    return pc;
  }
  if (z == p.a) {
    pc.tag = PointClass::Tag::Singular;
    pc.singular_which = 2;
    return pc;
  }

  const double r1 = radius_one(p);
  const double ra = radius_a(p);
  const double rinf = radius_infinity(p);

  {
    const double radius =
        (cache.has(Site::One, region_near_one(p, z)) ? kNearRadiusCached
                                                     : kNearRadiusStrict) * r1;
    if (std::abs(z - 1.0) < radius) {
      pc.tag = PointClass::Tag::NearOne;
      return pc;
    }
  }
  {
    const double radius =
        (cache.has(Site::A, region_near_a(p, z)) ? kNearRadiusCached
                                                 : kNearRadiusStrict) * ra;
    if (std::abs(z - p.a) < radius) {
      pc.tag = PointClass::Tag::NearA;
      return pc;
    }
  }
  if (std::abs(z) > rinf) {
    const SectorMap map = make_sector_map(p.a);
    // boundary angles resolved toward the upper limit: arg(z + i0) moves
    // counterclockwise for Re z > 0 and clockwise for Re z < 0
    const int rot = z.real() < 0.0 ? -1 : +1;
    const int k = map.locate(std::arg(z), rot);
    const double factor = cache.has(Site::Infinity, k) ? 1.0 : 5.0;
    if (std::abs(z) > factor * kCInfinity * rinf) {
      pc.tag = PointClass::Tag::NearInfinity;
      pc.sector = k;
      pc.omega = map.sectors[static_cast<std::size_t>(k)].omega;
      return pc;
    }
  }
  if (on_cut_b1(z)) {
    pc.tag = PointClass::Tag::OnCut;
    pc.cut = CutId::B1;
    return pc;
  }
  if (on_cut_ba(p, z)) {
    pc.tag = PointClass::Tag::OnCut;
    pc.cut = CutId::BaInf;
    return pc;
  }
  if (zero_cut && on_cut_b0(z)) {
    pc.tag = PointClass::Tag::OnCut;
    pc.cut = CutId::B0;
    return pc;
  }
  pc.tag = PointClass::Tag::Regular;
  return pc;
}

double residual_indicator(const HeunParams& p, Complex z, Complex f,
                          Complex df, Complex ddf) {
  const Complex denom = p.q - p.alpha * p.beta * z;
  if (std::abs(denom) < 0.01) {
    throw NearApexLoss(
        "ODE-residual indicator unreliable near q = alpha*beta*z");
  }
  const Complex zm1 = z - 1.0;
  const Complex zma = z - p.a;
  const Complex hhat =
      (z * zm1 * zma * ddf +
       (p.gamma * zm1 * zma + p.delta * z * zma + p.epsilon * z * zm1) * df) /
      denom;
  return std::abs(hhat - f);
}

double series_tail_indicator(long n_terms, double last_term_magnitude,
                             double partial_sum_magnitude) {
  const double n = static_cast<double>(n_terms);
  return std::sqrt(n) * last_term_magnitude +
         kMachineEps * n * partial_sum_magnitude;
}

double error_indicator(const HeunParams& p, Complex z, Complex f, Complex df,
                       Complex ddf, long n_terms, double last_term_magnitude,
                       double partial_sum_magnitude) {
  if (std::abs(p.q - p.alpha * p.beta * z) < 0.01) {
    return series_tail_indicator(n_terms, last_term_magnitude,
                                 partial_sum_magnitude);
  }
  return residual_indicator(p, z, f, df, ddf);
}

}  // namespace heun
