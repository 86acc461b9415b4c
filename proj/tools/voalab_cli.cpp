// voalab: batch driver for the vertex-algebra workbench.
//
// Subcommands: axioms, correlator, sew-check, converge-scan, seminorm.
// Exit codes: 0 success, 1 check failure, 2 usage/config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "voalab/json_io.hpp"
#include "voalab/seminorm.hpp"

using namespace voalab;
using nlohmann::json;

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<long> max_weight;
  std::optional<double> tol;
  unsigned long seed = 0;
  bool include_invalid = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_invalid = false) {
  cmd->add_option("--config", args.config_path, "JSON config file")->required();
  cmd->add_option("--out", args.out, "output path (overrides config)");
  cmd->add_option("--seed", args.seed, "random seed recorded in outputs");
  cmd->add_option("--max-weight", args.max_weight, "truncation level override");
  cmd->add_option("--tol", args.tol, "tolerance override");
  if (with_invalid)
    cmd->add_flag("--include-invalid", args.include_invalid,
                  "emit rows for invalid disks instead of skipping them");
}

json load_config(const CommonArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) throw std::invalid_argument("cannot open config: " + args.config_path);
  json j;
  in >> j;
  if (!j.is_object()) throw std::invalid_argument("config root must be an object");
  return j;
}

TruncationPolicy resolve_policy(const json& cfg, const CommonArgs& args) {
  TruncationPolicy policy;
  if (cfg.contains("policy")) policy = policy_from_json(cfg.at("policy"));
  if (args.max_weight) policy.max_weight = *args.max_weight;
  if (args.tol) policy.tolerance = *args.tol;
  policy.validate();
  return policy;
}

std::string resolve_out(const json& cfg, const CommonArgs& args) {
  if (args.out) return *args.out;
  if (cfg.contains("out")) return cfg.at("out").get<std::string>();
  throw std::invalid_argument("no output path: set \"out\" in the config or pass --out");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output: " + path);
  out << text;
}

std::vector<double> grid_axis(const json& j, const char* name) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max") || !j.contains("count"))
    throw std::invalid_argument(std::string("grid axis ") + name +
                                " needs {min, max, count}");
  double lo = j.at("min").get<double>();
  double hi = j.at("max").get<double>();
  long count = j.at("count").get<long>();
  if (count < 1) throw std::invalid_argument("grid axis count must be >= 1");
  std::vector<double> out;
  for (long i = 0; i < count; ++i)
    out.push_back(count == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(count - 1));
  return out;
}

std::vector<Disk> grid_disks(const json& cfg) {
  if (!cfg.contains("grid")) throw std::invalid_argument("config needs a \"grid\"");
  const json& g = cfg.at("grid");
  auto zs = grid_axis(g.at("zAbs"), "zAbs");
  auto r1s = grid_axis(g.at("r1"), "r1");
  auto r2s = grid_axis(g.at("r2"), "r2");
  std::vector<Disk> out;
  for (double z : zs)
    for (double r1 : r1s)
      for (double r2 : r2s) out.push_back(Disk{Cplx(z, 0.0), r1, r2});
  return out;
}

std::vector<Cplx> points_from_json(const json& j) {
  std::vector<Cplx> out;
  if (!j.is_array()) throw std::invalid_argument("points: expected an array");
  for (const auto& e : j) out.push_back(cplx_from_json(e));
  return out;
}

std::vector<GradedVector<Rational>> vectors_from_json(const json& j) {
  std::vector<GradedVector<Rational>> out;
  if (!j.is_array()) throw std::invalid_argument("insertions: expected an array");
  for (const auto& e : j) out.push_back(vector_from_json(e));
  return out;
}

// ---------------------------------------------------------------------------

int cmd_axioms(const CommonArgs& args) {
  json cfg = load_config(args);
  AlgebraSpec spec = AlgebraSpec::from_json(cfg.value("algebra", json::object()));
  long max_weight = cfg.value("maxWeight", 6L);
  if (args.max_weight) max_weight = *args.max_weight;

  Heisenberg<Rational> algebra(spec);
  AxiomReport report = algebra.verify_axioms(max_weight);

  json out;
  out["seed"] = args.seed;
  out["maxWeight"] = report.max_weight;
  out["allPassed"] = report.all_passed();
  out["checks"] = json::array();
  for (const auto& c : report.checks)
    out["checks"].push_back({{"name", c.name},
                             {"subject", c.subject},
                             {"passed", c.passed},
                             {"detail", c.detail}});
  write_text(resolve_out(cfg, args), out.dump(2) + "\n");
  return report.all_passed() ? 0 : 1;
}

int cmd_correlator(const CommonArgs& args) {
  json cfg = load_config(args);
  AlgebraSpec spec = AlgebraSpec::from_json(cfg.value("algebra", json::object()));
  Heisenberg<Rational> algebra(spec);

  DualVector<Rational> dual = dual_from_json(cfg.at("dual"));
  auto insertions = vectors_from_json(cfg.at("insertions"));
  GradedVector<Rational> vec = vector_from_json(cfg.at("vector"));

  RationalCorrelator rc = reconstruct_rational(algebra, dual, insertions, vec);
  json out;
  out["seed"] = args.seed;
  out["correlator"] = rc.to_json();

  if (cfg.contains("seriesDump")) {
    TruncationPolicy policy = policy_from_json(cfg.at("seriesDump"));
    auto series = series_correlator(algebra, dual, insertions, vec, policy);
    json terms = json::array();
    for (const auto& [e, c] : series.terms)
      terms.push_back({json(e), rational_to_string(c)});
    out["series"] = {{"region", "|z1|>...>|zk|>0"}, {"terms", terms}};
  }
  write_text(resolve_out(cfg, args), out.dump(2) + "\n");
  return 0;
}

int cmd_sew_check(const CommonArgs& args) {
  json cfg = load_config(args);
  AlgebraSpec spec = AlgebraSpec::from_json(cfg.value("algebra", json::object()));
  Lab lab(spec);

  GradedFunctional lambda = functional_from_json(cfg.at("lambda"));
  auto us = vectors_from_json(cfg.at("us"));
  GradedVector<Rational> u = vector_from_json(cfg.at("u"));
  auto vs = vectors_from_json(cfg.at("vs"));
  GradedVector<Rational> v = vector_from_json(cfg.at("v"));
  auto zeta = points_from_json(cfg.at("zeta"));
  auto eta = points_from_json(cfg.at("eta"));
  TruncationPolicy policy = resolve_policy(cfg, args);

  std::string csv = "z_re,z_im,r1,r2,valid,rel_error,ratio,accepted\n";
  std::size_t evaluated = 0;
  for (const Disk& d : grid_disks(cfg)) {
    std::string prefix = format_double(d.z.real()) + "," + format_double(d.z.imag()) +
                         "," + format_double(d.r1) + "," + format_double(d.r2);
    if (!d.valid()) {
      if (args.include_invalid) csv += prefix + ",0,nan,nan,0\n";
      continue;
    }
    auto rep = sewing_identity_check(lab, lambda, us, u, vs, v, d, zeta, eta, policy);
    bool accepted = rep.tail.accepted && rep.rel_error <= policy.tolerance;
    csv += prefix + ",1," + format_double(rep.rel_error) + "," +
           format_double(rep.tail.fitted_ratio) + "," + (accepted ? "1" : "0") + "\n";
    ++evaluated;
  }
  write_text(resolve_out(cfg, args), csv);
  if (evaluated == 0) {
    std::cerr << "sew-check: no valid disks in the grid\n";
    return 1;
  }
  return 0;
}

int cmd_converge_scan(const CommonArgs& args) {
  json cfg = load_config(args);
  AlgebraSpec spec = AlgebraSpec::from_json(cfg.value("algebra", json::object()));
  Lab lab(spec);

  auto lambda = std::make_shared<GradedFunctional>(functional_from_json(cfg.at("lambda")));
  GradedVector<Rational> u = vector_from_json(cfg.at("u"));
  auto us = vectors_from_json(cfg.at("us"));
  GradedVector<Rational> v = vector_from_json(cfg.at("v"));
  auto point = points_from_json(cfg.at("point"));
  TruncationPolicy policy = resolve_policy(cfg, args);

  std::string csv = "z_re,z_im,r1,r2,ratio,accepted\n";
  std::size_t evaluated = 0;
  for (const Disk& d : grid_disks(cfg)) {
    std::string prefix = format_double(d.z.real()) + "," + format_double(d.z.imag()) +
                         "," + format_double(d.r1) + "," + format_double(d.r2);
    if (!d.valid()) {
      if (args.include_invalid) csv += prefix + ",nan,0\n";
      continue;
    }
    auto dia = std::make_shared<DiamondFunctional>(diamond(lab, u, lambda, d, policy));
    auto res = g_eval(lab, *dia, us, v, point, policy);
    csv += prefix + "," + format_double(res.report.fitted_ratio) + "," +
           (res.report.accepted ? "1" : "0") + "\n";
    ++evaluated;
  }
  write_text(resolve_out(cfg, args), csv);
  if (evaluated == 0) {
    std::cerr << "converge-scan: no valid disks in the grid\n";
    return 1;
  }
  return 0;
}

int cmd_seminorm(const CommonArgs& args) {
  json cfg = load_config(args);
  if (!cfg.contains("correlatorFile"))
    throw std::invalid_argument("config needs \"correlatorFile\"");
  std::ifstream in(cfg.at("correlatorFile").get<std::string>());
  if (!in) throw std::invalid_argument("cannot open correlator file");
  json jc;
  in >> jc;
  RationalCorrelator rc =
      RationalCorrelator::from_json(jc.contains("correlator") ? jc.at("correlator") : jc);

  long n_min = cfg.value("nMin", 1L);
  long n_max = cfg.value("nMax", 0L);
  if (n_min < 1 || n_max < n_min)
    throw std::invalid_argument("seminorm range empty: need 1 <= nMin <= nMax");

  std::string csv = "n,seminorm\n";
  double running = 0.0;
  for (long n = n_min; n <= n_max; ++n) {
    SeminormEstimate est = seminorm_Rk(rc, n);
    running = std::max(running, est.value);
    csv += std::to_string(n) + "," + format_double(running) + "\n";
  }
  write_text(resolve_out(cfg, args), csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex-algebra workbench batch driver"};
  app.require_subcommand(1);

  CommonArgs axioms_args, corr_args, sew_args, scan_args, semi_args;
  auto* axioms = app.add_subcommand("axioms", "verify the algebra axiom suite");
  add_common(axioms, axioms_args);
  auto* corr = app.add_subcommand("correlator", "reconstruct a rational correlator");
  add_common(corr, corr_args);
  auto* sew = app.add_subcommand("sew-check", "sewing-identity residuals over a disk grid");
  add_common(sew, sew_args, true);
  auto* scan = app.add_subcommand("converge-scan", "diamond/g_k tail ratios over a disk grid");
  add_common(scan, scan_args, true);
  auto* semi = app.add_subcommand("seminorm", "R_k seminorm estimates over an index range");
  add_common(semi, semi_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (axioms->parsed()) return cmd_axioms(axioms_args);
    if (corr->parsed()) return cmd_correlator(corr_args);
    if (sew->parsed()) return cmd_sew_check(sew_args);
    if (scan->parsed()) return cmd_converge_scan(scan_args);
    if (semi->parsed()) return cmd_seminorm(semi_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
