#pragma once

#include "heun/connection.hpp"

namespace heun {

// Evaluation context: tunables plus the connection-coefficient cache.
// Changing kappa clears the cache (cached pairs are kappa-dependent through
// the matching evaluations).
class EvalContext {
 public:
  EvalContext() = default;
  explicit EvalContext(const EvalOptions& opts) { set_options(opts); }

  double kappa() const { return opts_.kappa; }
  void set_kappa(double kappa);
  long max_terms() const { return opts_.max_terms; }
  void set_max_terms(long n);
  void set_options(const EvalOptions& opts);
  const EvalOptions& options() const { return opts_; }

  ConnectionCache& cache() { return cache_; }
  const ConnectionCache& cache() const { return cache_; }

 private:
  EvalOptions opts_{};
  ConnectionCache cache_;
};

// Shared default context (thread-safe evaluation; mutate tunables only while
// no evaluation is in flight).
EvalContext& default_context();

// Single-valued local Heun function of the first kind, Hl(0) = 1, with cuts
// (1,+inf), (a, e^{i arg a} inf) and, when gamma is a nonpositive integer,
// (-inf, 0).  Routes to the direct series, polyline continuation or a local
// representation near 1, a, infinity; points exactly on a cut are evaluated
// as limits from the upper half-plane.
EvalResult heunl(const HeunParams& p, Complex z, EvalContext& ctx);
EvalResult heunl(const HeunParams& p, Complex z);

// Second solution with exponent 1 - gamma at the origin; same routing.
// At z = 0: SingularPoint when Re(1-gamma) <= 0, the limit value 0 otherwise.
EvalResult heuns(const HeunParams& p, Complex z, EvalContext& ctx);
EvalResult heuns(const HeunParams& p, Complex z);

// Multi-valued evaluation along an arbitrary polyline from 0.
EvalResult heunl_multivalued(const HeunParams& p, const Path& path,
                             EvalContext& ctx);
EvalResult heunl_multivalued(const HeunParams& p, const Path& path);
EvalResult heuns_multivalued(const HeunParams& p, const Path& path,
                             EvalContext& ctx);
EvalResult heuns_multivalued(const HeunParams& p, const Path& path);

}  // namespace heun
