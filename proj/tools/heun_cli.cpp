// Command-line front-end: point evaluation, polyline evaluation, grid sweeps
// and a self-test against a closed-form reduction, all emitting JSON Lines.
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heun/heun.hpp"
#include "heun/series.hpp"
#include "json.hpp"

namespace {

using heun::Complex;
using json = nlohmann::ordered_json;

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Complex(re, 0.0);
    }
    const std::string re_part = text.substr(0, comma);
    const std::string im_part = text.substr(comma + 1);
    const double re = std::stod(re_part, &used);
    if (used != re_part.size()) throw std::invalid_argument(text);
    const double im = std::stod(im_part, &used);
    if (used != im_part.size()) throw std::invalid_argument(text);
    return Complex(re, im);
  } catch (const std::exception&) {
    throw CLI::ValidationError("complex values use the form re,im: " + text);
  }
}

json num_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json complex_json(Complex z) { return json::array({num_json(z.real()), num_json(z.imag())}); }

json record_json(Complex z, const heun::EvalResult& res) {
  json rec;
  rec["z"] = complex_json(z);
  rec["f"] = complex_json(res.f);
  rec["df"] = complex_json(res.df);
  rec["err"] = num_json(res.r);
  rec["nterms"] = res.n_terms;
  rec["route"] = heun::to_string(res.route);
  return rec;
}

struct ParamFlags {
  std::string a, q, alpha, beta, gamma, delta;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "singular point a (re,im)")->required();
    cmd->add_option("--q", q, "accessory parameter (re,im)")->required();
    cmd->add_option("--alpha", alpha, "exponent parameter (re,im)")->required();
    cmd->add_option("--beta", beta, "exponent parameter (re,im)")->required();
    cmd->add_option("--gamma", gamma, "exponent parameter (re,im)")->required();
    cmd->add_option("--delta", delta, "exponent parameter (re,im)")->required();
  }

  heun::HeunParams make() const {
    return heun::make_params(parse_complex(a), parse_complex(q),
                             parse_complex(alpha), parse_complex(beta),
                             parse_complex(gamma), parse_complex(delta));
  }
};

// closed-form reference Hl(4, 9/4, 3/2, 3/2, 1/2, 2; z) = 2/(sqrt(4-z)(1-z));
// exactly-real z > 4 takes the limit from above
Complex reference_sqrt(Complex z) {
  if (z.imag() == 0.0 && z.real() > 4.0) {
    return Complex(0.0, -std::sqrt(z.real() - 4.0));
  }
  return std::sqrt(Complex(4.0) - z);
}

Complex reference_h(Complex z) { return 2.0 / (reference_sqrt(z) * (1.0 - z)); }

Complex reference_hd(Complex z) {
  return reference_h(z) * (0.5 / (4.0 - z) + 1.0 / (1.0 - z));
}

double lambda_of(Complex f, Complex df, Complex z) {
  const Complex h = reference_h(z);
  const Complex hd = reference_hd(z);
  return std::abs(f - h) / (1.0 + std::abs(h)) +
         std::abs(df - hd) / (1.0 + std::abs(hd));
}

// distance to the ray (1, +inf) on the real axis
double dist_to_cut_b1(Complex z) {
  if (z.real() >= 1.0) return std::abs(z.imag());
  return std::abs(z - 1.0);
}

int error_exit_code(const heun::Error& e) {
  if (dynamic_cast<const heun::SingularPoint*>(&e) != nullptr) return 4;
  if (dynamic_cast<const heun::NonConvergence*>(&e) != nullptr ||
      dynamic_cast<const heun::PathTooClose*>(&e) != nullptr ||
      dynamic_cast<const heun::IllConditioned*>(&e) != nullptr) {
    return 3;
  }
  return 2;  // invalid parameters, domain errors, malformed paths
}

void emit_error(const heun::Error& e, const char* type) {
  json rec;
  rec["error"] = type;
  rec["message"] = e.what();
  rec["nterms"] = e.diagnostics().n_terms;
  rec["err"] = num_json(e.diagnostics().r_partial);
  rec["last_z"] = complex_json(e.diagnostics().last_z);
  std::cerr << rec.dump() << "\n";
}

const char* error_type(const heun::Error& e) {
  if (dynamic_cast<const heun::SingularPoint*>(&e)) return "singular-point";
  if (dynamic_cast<const heun::NonConvergence*>(&e)) return "non-convergence";
  if (dynamic_cast<const heun::PathTooClose*>(&e)) return "path-too-close";
  if (dynamic_cast<const heun::IllConditioned*>(&e)) return "ill-conditioned";
  if (dynamic_cast<const heun::InvalidParams*>(&e)) return "invalid-params";
  if (dynamic_cast<const heun::OnCutOrSingular*>(&e)) return "on-cut";
  if (dynamic_cast<const heun::DomainError*>(&e)) return "domain-error";
  return "error";
}

struct GridSpec {
  double re_min = -1.0, re_max = 1.0;
  double im_min = -1.0, im_max = 1.0;
  long re_steps = 2, im_steps = 2;

  double re_at(long i) const {
    return re_min + (re_max - re_min) * static_cast<double>(i) /
                        static_cast<double>(re_steps - 1);
  }
  double im_at(long j) const {
    return im_min + (im_max - im_min) * static_cast<double>(j) /
                        static_cast<double>(im_steps - 1);
  }
};

int run_eval(const heun::HeunParams& p, heun::FunctionKind kind, Complex z,
             heun::EvalContext& ctx) {
  const heun::EvalResult res = kind == heun::FunctionKind::HeunL
                                   ? heun::heunl(p, z, ctx)
                                   : heun::heuns(p, z, ctx);
  std::cout << record_json(z, res).dump() << "\n";
  return 0;
}

int run_grid(const heun::HeunParams& p, heun::FunctionKind kind,
             const GridSpec& grid, const std::string& out_path,
             const std::string& reference, heun::EvalContext& ctx) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw heun::DomainError("cannot open output file " + out_path);
    out = &file;
  }
  const bool with_lambda = !reference.empty();
  // row-major: Im outer, Re inner
  for (long j = 0; j < grid.im_steps; ++j) {
    for (long i = 0; i < grid.re_steps; ++i) {
      const Complex z(grid.re_at(i), grid.im_at(j));
      const heun::CacheViewForKind view(ctx.cache(), kind, p);
      const heun::PointClass pc =
          heun::classify(p, z, view, heun::zero_branch_point(p, kind));
      json rec;
      if (pc.tag == heun::PointClass::Tag::Singular ||
          pc.tag == heun::PointClass::Tag::OnCut) {
        heun::EvalResult skip;
        skip.route = heun::Route::Skipped;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        skip.f = skip.df = Complex(nan, nan);
        skip.r = nan;
        rec = record_json(z, skip);
      } else {
        try {
          const heun::EvalResult res = kind == heun::FunctionKind::HeunL
                                           ? heun::heunl(p, z, ctx)
                                           : heun::heuns(p, z, ctx);
          rec = record_json(z, res);
          if (with_lambda) rec["lambda"] = num_json(lambda_of(res.f, res.df, z));
        } catch (const heun::Error& e) {
          heun::EvalResult failed;
          const double nan = std::numeric_limits<double>::quiet_NaN();
          failed.f = failed.df = Complex(nan, nan);
          failed.r = std::numeric_limits<double>::infinity();
          failed.n_terms = e.diagnostics().n_terms;
          rec = record_json(z, failed);
          rec["route"] = std::string("failed:") + error_type(e);
        }
      }
      *out << rec.dump() << "\n";
    }
  }
  return 0;
}

int run_path(const heun::HeunParams& p, heun::FunctionKind kind,
             const std::string& path_text, std::optional<Complex> z_flag,
             heun::EvalContext& ctx) {
  if (path_text.empty()) {
    if (!z_flag.has_value()) {
      throw CLI::ValidationError("path: provide --path or --z");
    }
    const heun::EvalResult res = kind == heun::FunctionKind::HeunL
                                     ? heun::heunl(p, *z_flag, ctx)
                                     : heun::heuns(p, *z_flag, ctx);
    json rec = record_json(*z_flag, res);
    rec["winding"] = num_json(res.winding);
    std::cout << rec.dump() << "\n";
    return 0;
  }
  std::vector<Complex> pts;
  std::size_t start = 0;
  while (start <= path_text.size()) {
    const auto semi = path_text.find(';', start);
    const std::string item =
        path_text.substr(start, semi == std::string::npos ? std::string::npos
                                                          : semi - start);
    if (item.empty()) throw CLI::ValidationError("malformed --path");
    pts.push_back(parse_complex(item));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  const heun::Path path = heun::make_path(p, pts);
  const heun::EvalResult res = kind == heun::FunctionKind::HeunL
                                   ? heun::heunl_multivalued(p, path, ctx)
                                   : heun::heuns_multivalued(p, path, ctx);
  json rec = record_json(path.waypoints.back(), res);
  rec["winding"] = num_json(res.winding);
  std::cout << rec.dump() << "\n";
  return 0;
}

int run_selftest(const GridSpec& grid, double tol, heun::EvalContext& ctx) {
  const heun::HeunParams p = heun::make_params(4.0, 2.25, 1.5, 1.5, 0.5, 2.0);
  double max_lambda = 0.0;
  double sum_lambda = 0.0;
  long max_nterms = 0;
  long nodes = 0;
  bool eval_failure = false;
  for (long j = 0; j < grid.im_steps; ++j) {
    for (long i = 0; i < grid.re_steps; ++i) {
      const Complex z(grid.re_at(i), grid.im_at(j));
      const double clearance = std::min(
          {std::abs(z), std::abs(z - 1.0), std::abs(z - 4.0), dist_to_cut_b1(z)});
      if (clearance < 1e-8) continue;
      try {
        const heun::EvalResult res = heun::heunl(p, z, ctx);
        const double lam = lambda_of(res.f, res.df, z);
        max_lambda = std::max(max_lambda, lam);
        sum_lambda += lam;
        max_nterms = std::max(max_nterms, res.n_terms);
        ++nodes;
      } catch (const heun::Error&) {
        eval_failure = true;
        ++nodes;
      }
    }
  }
  const bool pass = !eval_failure && nodes > 0 && max_lambda <= tol;
  json rec;
  rec["max_lambda"] = num_json(max_lambda);
  rec["mean_lambda"] = num_json(nodes > 0 ? sum_lambda / static_cast<double>(nodes) : 0.0);
  rec["max_nterms"] = max_nterms;
  rec["nodes"] = nodes;
  rec["tol"] = num_json(tol);
  rec["pass"] = pass;
  std::cout << rec.dump() << "\n";
  return pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical evaluation of the local Heun functions"};
  app.require_subcommand(1);

  double kappa = 0.5;
  long max_terms = 20000;
  std::string kind_text = "hl";
  bool json_flag = false;
  app.add_option("--kappa", kappa, "continuation step fraction")
      ->check(CLI::Range(0.05, 0.9));
  app.add_option("--max-terms", max_terms, "per-expansion term cap");
  app.add_option("--kind", kind_text, "function kind: hl or hs")
      ->check(CLI::IsMember({"hl", "hs"}));
  app.add_flag("--json", json_flag, "JSON Lines output (always on; reserved)");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate at one point");
  ParamFlags eval_params;
  eval_params.attach(eval_cmd);
  std::string eval_z;
  eval_cmd->add_option("--z", eval_z, "evaluation point (re,im)")->required();

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "evaluate over a rectangular grid");
  ParamFlags grid_params;
  grid_params.attach(grid_cmd);
  GridSpec grid;
  grid_cmd->add_option("--re-min", grid.re_min)->required();
  grid_cmd->add_option("--re-max", grid.re_max)->required();
  grid_cmd->add_option("--re-steps", grid.re_steps)->required()
      ->check(CLI::Range(2L, 1000000L));
  grid_cmd->add_option("--im-min", grid.im_min)->required();
  grid_cmd->add_option("--im-max", grid.im_max)->required();
  grid_cmd->add_option("--im-steps", grid.im_steps)->required()
      ->check(CLI::Range(2L, 1000000L));
  std::string grid_out;
  std::string grid_reference;
  grid_cmd->add_option("--out", grid_out, "output file (JSON Lines); - for stdout");
  grid_cmd->add_option("--reference", grid_reference,
                       "closed-form reference for the lambda field")
      ->check(CLI::IsMember({"closed-form"}));

  // path
  auto* path_cmd = app.add_subcommand("path", "evaluate along a polyline");
  ParamFlags path_params;
  path_params.attach(path_cmd);
  std::string path_text;
  std::string path_z;
  path_cmd->add_option("--path", path_text,
                       "waypoints x1,y1;x2,y2;... (leading 0 implicit)");
  path_cmd->add_option("--z", path_z, "target point when --path is empty");

  // selftest
  auto* self_cmd =
      app.add_subcommand("selftest", "closed-form identity check on a grid");
  GridSpec self_grid;
  self_grid.re_min = self_grid.im_min = -20.0;
  self_grid.re_max = self_grid.im_max = 20.0;
  self_grid.re_steps = self_grid.im_steps = 101;
  double tol = 1e-12;
  self_cmd->add_option("--tol", tol, "max lambda tolerance");
  self_cmd->add_option("--re-steps", self_grid.re_steps)->check(CLI::Range(2L, 1000000L));
  self_cmd->add_option("--im-steps", self_grid.im_steps)->check(CLI::Range(2L, 1000000L));
  self_cmd->add_option("--re-min", self_grid.re_min);
  self_cmd->add_option("--re-max", self_grid.re_max);
  self_cmd->add_option("--im-min", self_grid.im_min);
  self_cmd->add_option("--im-max", self_grid.im_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "{\"error\":\"usage\",\"message\":" << json(e.what()).dump()
              << "}\n";
    return 2;
  }

  heun::EvalContext ctx;
  ctx.set_kappa(kappa);
  ctx.set_max_terms(max_terms);
  const heun::FunctionKind kind = kind_text == "hs" ? heun::FunctionKind::HeunS
                                                    : heun::FunctionKind::HeunL;

  try {
    if (eval_cmd->parsed()) {
      return run_eval(eval_params.make(), kind, parse_complex(eval_z), ctx);
    }
    if (grid_cmd->parsed()) {
      return run_grid(grid_params.make(), kind, grid, grid_out, grid_reference,
                      ctx);
    }
    if (path_cmd->parsed()) {
      std::optional<Complex> z;
      if (!path_z.empty()) z = parse_complex(path_z);
      return run_path(path_params.make(), kind, path_text, z, ctx);
    }
    if (self_cmd->parsed()) {
      return run_selftest(self_grid, tol, ctx);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "{\"error\":\"usage\",\"message\":" << json(e.what()).dump()
              << "}\n";
    return 2;
  } catch (const heun::Error& e) {
    emit_error(e, error_type(e));
    return error_exit_code(e);
  }
  return 0;
}
