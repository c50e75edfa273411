#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace heun {

using Complex = std::complex<double>;

// binary64 machine epsilon, used by the termination rule and the tail estimator
inline constexpr double kMachineEps = 2.220446049250313e-16;

enum class FunctionKind { HeunL, HeunS };

// Tunables shared by every expansion/continuation routine.
struct EvalOptions {
  double kappa = 0.5;      // step fraction of the local convergence radius, in [0.05, 0.9]
  long max_terms = 20000;  // per-expansion term cap
};

// Which code path produced a result (diagnostic, surfaced by the CLI).
enum class Route {
  Origin,        // exact z = 0
  SeriesZero,    // direct power series about 0
  Basic,         // polyline analytic continuation
  NearOne,       // local representation about z = 1
  NearA,         // local representation about z = a
  NearInfinity,  // local representation about z = infinity
  OnCut,         // continuation with the upper-limit convention on a cut
  PathEval,      // user-supplied polyline
  Skipped
};

std::string to_string(Route route);

// Value, derivative, error indicator and term count of one evaluation.
struct EvalResult {
  Complex f{};
  Complex df{};
  double r = 0.0;     // error indicator, >= 0
  long n_terms = 0;   // total number of power-series terms consumed
  Route route = Route::SeriesZero;
  bool used_cache = false;  // near-singularity route taken via cached coefficients
  double winding = 0.0;     // accumulated change of arg(z) along the evaluated path
  long steps = 0;           // Taylor continuation steps taken
};

// Diagnostics attached to every error: whatever was accumulated before the failure.
struct Diagnostics {
  double r_partial = 0.0;
  long n_terms = 0;
  Complex last_z{};
  Route route = Route::Basic;
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg, Diagnostics diag = {})
      : std::runtime_error(msg), diag_(diag) {}
  const Diagnostics& diagnostics() const { return diag_; }

 private:
  Diagnostics diag_;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};
class DomainError : public Error {
 public:
  using Error::Error;
};
class NonConvergence : public Error {
 public:
  using Error::Error;
};
class PathTooClose : public Error {
 public:
  using Error::Error;
};
class SingularPoint : public Error {
 public:
  using Error::Error;
};
class IllConditioned : public Error {
 public:
  using Error::Error;
};
class OnCutOrSingular : public Error {
 public:
  using Error::Error;
};
// Signals that the ODE-residual estimator is unreliable near q = alpha*beta*z;
// callers fall back to the series-tail estimator.
class NearApexLoss : public Error {
 public:
  using Error::Error;
};

}  // namespace heun
