#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "heun/continuation.hpp"

namespace heun {

// Cache key: function kind, singular site, half-plane sign or sector index,
// and the exact bit patterns of the six complex parameters.
struct ConnectionKey {
  FunctionKind kind = FunctionKind::HeunL;
  Site site = Site::One;
  int region = 0;
  std::array<std::uint64_t, 12> bits{};

  bool operator==(const ConnectionKey& o) const = default;
};

struct ConnectionKeyHash {
  std::size_t operator()(const ConnectionKey& k) const;
};

ConnectionKey make_connection_key(FunctionKind kind, Site site, int region,
                                  const HeunParams& p);

// A matched coefficient pair (C1,C2 / D1,D2 / E1,E2) with the matching point,
// the error indicator of the matching solve and the number of series terms
// spent computing it.
struct ConnectionCoefficients {
  Complex c1{};
  Complex c2{};
  Complex matched_at{};
  double r_match = 0.0;
  long n_match = 0;
};

class ConnectionCache {
 public:
  // Returns the cached value or runs `compute`, stores and returns it.
  // Computation happens outside the lock; errors propagate without caching;
  // concurrent duplicate computation is allowed (results are bit-identical),
  // the first insertion wins.  `was_computed` reports a cache miss.
  ConnectionCoefficients lookup_or_compute(
      const ConnectionKey& key,
      const std::function<ConnectionCoefficients()>& compute,
      bool* was_computed = nullptr);

  bool has(const ConnectionKey& key) const;
  void clear();
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<ConnectionKey, ConnectionCoefficients, ConnectionKeyHash>
      map_;
};

// Cache probe bound to one (kind, params) pair, for classify().
class CacheViewForKind final : public ConnectionCacheView {
 public:
  CacheViewForKind(const ConnectionCache& cache, FunctionKind kind,
                   const HeunParams& p)
      : cache_(&cache), kind_(kind), p_(&p) {}
  bool has(Site site, int region) const override {
    return cache_->has(make_connection_key(kind_, site, region, *p_));
  }

 private:
  const ConnectionCache* cache_;
  FunctionKind kind_;
  const HeunParams* p_;
};

// Sector of the exterior annulus containing z.  Requires |z| > max{1,|a|};
// throws OnCutOrSingular when arg z equals a cut direction exactly.
std::pair<int, double> sector_of(const HeunParams& p, Complex z);

// Matching-coefficient solves.  `region` is the half-plane sign (or 0) for
// the sites 1 and a, and the sector index at infinity.
ConnectionCoefficients match_at_one(const HeunParams& p, FunctionKind kind,
                                    int region, const EvalOptions& opts = {});
ConnectionCoefficients match_at_a(const HeunParams& p, FunctionKind kind,
                                  int region, const EvalOptions& opts = {});
ConnectionCoefficients match_at_infinity(const HeunParams& p,
                                         FunctionKind kind, int sector,
                                         const EvalOptions& opts = {});

// Near-singularity evaluators; coefficients come from the cache or a fresh
// match (whose term count is charged to the first evaluation).
EvalResult eval_near_one(const HeunParams& p, FunctionKind kind, Complex z,
                         ConnectionCache& cache, const EvalOptions& opts = {},
                         int side = +1);
EvalResult eval_near_a(const HeunParams& p, FunctionKind kind, Complex z,
                       ConnectionCache& cache, const EvalOptions& opts = {},
                       int side = +1);
EvalResult eval_near_infinity(const HeunParams& p, FunctionKind kind,
                              Complex z, ConnectionCache& cache,
                              const EvalOptions& opts = {}, int side = +1);

// Transformed parameter sets of the local representations (exposed for tests).
HeunParams transform_near_one(const HeunParams& p);
HeunParams transform_near_a(const HeunParams& p);
HeunParams transform_near_infinity(const HeunParams& p);

}  // namespace heun
