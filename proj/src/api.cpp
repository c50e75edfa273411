#include "heun/heun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heun/series.hpp"

namespace heun {

void EvalContext::set_kappa(double kappa) {
  const double clamped = std::clamp(kappa, 0.05, 0.9);
  if (clamped != opts_.kappa) {
    opts_.kappa = clamped;
    cache_.clear();  // cached pairs were matched with the old stepping
  }
}

void EvalContext::set_max_terms(long n) {
  opts_.max_terms = std::max(1L, n);
}

void EvalContext::set_options(const EvalOptions& opts) {
  set_kappa(opts.kappa);
  set_max_terms(opts.max_terms);
}

EvalContext& default_context() {
  static EvalContext ctx;
  return ctx;
}

namespace {

EvalResult heuns_at_origin(const HeunParams& p) {
  // limit of z^{1-gamma}(1 + ...) as z -> 0
  const Complex one_minus_g = 1.0 - p.gamma;
  if (one_minus_g.real() <= 0.0) {
    throw SingularPoint("second solution is unbounded at z = 0",
                        {0.0, 0, Complex(0.0), Route::Origin});
  }
  EvalResult out;
  out.f = 0.0;
  out.route = Route::Origin;
  if (p.gamma == Complex(0.0)) {
    out.df = 1.0;  // Hs = z + O(z^2)
  } else if (p.gamma.real() < 0.0) {
    out.df = 0.0;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.df = Complex(nan, nan);
    out.r = std::numeric_limits<double>::infinity();
  }
  return out;
}

EvalResult dispatch(const HeunParams& p, FunctionKind kind, Complex z,
                    EvalContext& ctx) {
  const EvalOptions& opts = ctx.options();
  if (kind == FunctionKind::HeunS && z == Complex(0.0)) {
    return heuns_at_origin(p);
  }
  const CacheViewForKind view(ctx.cache(), kind, p);
  const PointClass pc = classify(p, z, view, zero_branch_point(p, kind));
  switch (pc.tag) {
    case PointClass::Tag::Singular: {
      if (pc.singular_which == 0) {
        EvalResult out = series_hl_at_zero(p, Complex(0.0), opts);
        out.route = Route::Origin;
        return out;
      }
      throw SingularPoint(pc.singular_which == 1
                              ? "evaluation point is the singular point 1"
                              : "evaluation point is the singular point a",
                          {0.0, 0, z, Route::Basic});
    }
    case PointClass::Tag::NearOne:
      return eval_near_one(p, kind, z, ctx.cache(), opts);
    case PointClass::Tag::NearA:
      return eval_near_a(p, kind, z, ctx.cache(), opts);
    case PointClass::Tag::NearInfinity:
      return eval_near_infinity(p, kind, z, ctx.cache(), opts);
    case PointClass::Tag::OnCut: {
      // upper-limit convention: continuation with upward-deflected approach
      EvalResult out = detail::basic_eval(p, kind, z, opts, +1);
      out.route = Route::OnCut;
      return out;
    }
    case PointClass::Tag::Regular:
      break;
  }
  if (std::abs(z) <= opts.kappa * radius_zero(p)) {
    return kind == FunctionKind::HeunL ? series_hl_at_zero(p, z, opts)
                                       : series_hs_at_zero(p, z, opts);
  }
  return detail::basic_eval(p, kind, z, opts, +1);
}

}  // namespace

EvalResult heunl(const HeunParams& p, Complex z, EvalContext& ctx) {
  return dispatch(p, FunctionKind::HeunL, z, ctx);
}

EvalResult heunl(const HeunParams& p, Complex z) {
  return heunl(p, z, default_context());
}

EvalResult heuns(const HeunParams& p, Complex z, EvalContext& ctx) {
  return dispatch(p, FunctionKind::HeunS, z, ctx);
}

EvalResult heuns(const HeunParams& p, Complex z) {
  return heuns(p, z, default_context());
}

EvalResult heunl_multivalued(const HeunParams& p, const Path& path,
                             EvalContext& ctx) {
  const Path validated = make_path(p, path.waypoints);
  return eval_along_path(p, FunctionKind::HeunL, validated, ctx.options());
}

EvalResult heunl_multivalued(const HeunParams& p, const Path& path) {
  return heunl_multivalued(p, path, default_context());
}

EvalResult heuns_multivalued(const HeunParams& p, const Path& path,
                             EvalContext& ctx) {
  const Path validated = make_path(p, path.waypoints);
  return eval_along_path(p, FunctionKind::HeunS, validated, ctx.options());
}

EvalResult heuns_multivalued(const HeunParams& p, const Path& path) {
  return heuns_multivalued(p, path, default_context());
}

}  // namespace heun
