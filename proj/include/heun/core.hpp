#pragma once

#include <vector>

#include "heun/types.hpp"

namespace heun {

// Parameters of the Heun equation
//   H'' + (gamma/z + delta/(z-1) + epsilon/(z-a)) H' +
//   (alpha*beta*z - q) / (z(z-1)(z-a)) H = 0
// with epsilon always derived from the Fuchsian relation
// alpha + beta + 1 = gamma + delta + epsilon.
struct HeunParams {
  Complex a{};
  Complex q{};
  Complex alpha{};
  Complex beta{};
  Complex gamma{};
  Complex delta{};
  Complex epsilon{};
};

// Validates a (finite, not 0 or 1) and derives epsilon.
HeunParams make_params(Complex a, Complex q, Complex alpha, Complex beta,
                       Complex gamma, Complex delta);

// One branch cut: a ray from `origin` in direction `direction` (radians).
struct BranchCut {
  Complex origin{};
  double direction = 0.0;
};

// The fixed cuts: (-inf,0), (1,+inf) and the ray from a in direction arg(a).
struct BranchCutSet {
  BranchCut b0;
  BranchCut b1;
  BranchCut ba;
};

BranchCutSet branch_cuts(const HeunParams& p);

enum class CutId { B0, B1, BaInf };
enum class Site { One, A, Infinity };

// True when the function of the given kind has a branch point at z = 0:
// HeunS unless gamma is a nonpositive integer, HeunL when it is.
bool zero_branch_point(const HeunParams& p, FunctionKind kind);

// True when gamma is 0 or a negative integer (exactly, as stored).
bool gamma_nonpositive_integer(Complex gamma);

// Exact ray-membership tests (no tolerance).
bool on_cut_b0(Complex z);
bool on_cut_b1(Complex z);
bool on_cut_ba(const HeunParams& p, Complex z);

// Angular sector of the exterior annulus |z| > max{1,|a|}, delimited by the
// cut directions {pi, 0, arg a}; two sectors when a is real, three otherwise.
struct Sector {
  double lo = 0.0;     // angular interval (lo, hi), hi may exceed pi
  double hi = 0.0;
  double omega = 0.0;  // mean-line angle, normalized to (-pi, pi]
};

struct SectorMap {
  std::vector<Sector> sectors;
  // Sector containing angle theta; boundary angles resolved toward the side
  // given by `rot` (+1: counterclockwise neighbour, -1: clockwise neighbour).
  int locate(double theta, int rot) const;
  // -1 when theta is exactly a boundary direction.
  int locate_strict(double theta) const;
};

SectorMap make_sector_map(Complex a);

// Read-only probe of the connection-coefficient cache, used by classify to
// pick the strict or the relaxed near-singularity radius.  The default
// implementation models an empty cache.
class ConnectionCacheView {
 public:
  virtual ~ConnectionCacheView() = default;
  virtual bool has(Site site, int region) const {
    (void)site;
    (void)region;
    return false;
  }
};

struct PointClass {
  enum class Tag { Regular, Singular, OnCut, NearOne, NearA, NearInfinity };
  Tag tag = Tag::Regular;
  int singular_which = -1;  // 0, 1, 2 for z = 0, 1, a
  CutId cut = CutId::B0;
  int sector = -1;          // NearInfinity only
  double omega = 0.0;       // mean-line angle of that sector
};

// Deterministic routing decision for a point.  Near-singularity radii:
// |z-1| < 0.05 R1 (0.25 R1 with cached coefficients), R1 = min{1,|a-1|};
// |z-a| < 0.05 Ra (0.25 Ra),                           Ra = min{|a|,|1-a|};
// |z| > 5 Cinf Rinf (Cinf Rinf),  Cinf = 2,            Rinf = max{1,|a|}.
// `zero_cut` controls whether membership of (-inf,0) is reported as OnCut.
PointClass classify(const HeunParams& p, Complex z,
                    const ConnectionCacheView& cache, bool zero_cut = false);

// Whether the relaxed near-singularity disc reaches another branch cut, so
// that a single coefficient pair cannot represent both sides: near 1 the cut
// from a may pass through the disc (always so for a in (0,1)), near a the
// disc may touch (-inf,0) or (1,+inf) (always so for real a < 0 or a > 1).
bool split_regions_near_one(const HeunParams& p);
bool split_regions_near_a(const HeunParams& p);

// Half-plane region keys for the split cases: +1/-1 by sign(Im z) when the
// site needs separate pairs, 0 otherwise.  sign(Im z) == 0 resolves to +1
// (upper-limit convention).
int region_near_one(const HeunParams& p, Complex z);
int region_near_a(const HeunParams& p, Complex z);

inline constexpr double kNearRadiusStrict = 0.05;
inline constexpr double kNearRadiusCached = 0.25;
inline constexpr double kCInfinity = 2.0;

double radius_one(const HeunParams& p);       // min{1, |a-1|}
double radius_a(const HeunParams& p);         // min{|a|, |1-a|}
double radius_infinity(const HeunParams& p);  // max{1, |a|}
double radius_zero(const HeunParams& p);      // min{1, |a|}

// |Hhat(z) - f| where Hhat is reconstructed from the equation:
// Hhat = (q - alpha*beta*z)^{-1} { z(z-1)(z-a) ddf
//        + [gamma(z-1)(z-a) + delta z(z-a) + epsilon z(z-1)] df }.
// Throws NearApexLoss when |q - alpha*beta*z| < 0.01.
double residual_indicator(const HeunParams& p, Complex z, Complex f,
                          Complex df, Complex ddf);

// sqrt(N) |t_N| + eps_machine * N * |S_N|.
double series_tail_indicator(long n_terms, double last_term_magnitude,
                             double partial_sum_magnitude);

// Selects between the two indicators based on |q - alpha*beta*z|.
double error_indicator(const HeunParams& p, Complex z, Complex f, Complex df,
                       Complex ddf, long n_terms, double last_term_magnitude,
                       double partial_sum_magnitude);

}  // namespace heun
