#include "cbs/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "cbs/bounds.hpp"
#include "cbs/errors.hpp"
#include "cbs/inequality.hpp"
#include "cbs/vector_bounds.hpp"

namespace cbs {

namespace {

// A failing check whose relative margin stays below this is reported as a
// tolerance issue rather than a counterexample.
constexpr double kToleranceMargin = 1e-6;

Json bound_entry(const BoundReport& r) {
  Json j = Json::object();
  j["name"] = r.name;
  j["exponents"] = r.exponents;
  j["value"] = r.bound;
  j["slack_ratio"] = r.slack_ratio;
  return j;
}

Json grid_json(std::span<const double> grid) {
  Json g = Json::array();
  for (double e : grid) g.push_back(e);
  return g;
}

double margin(double lhs, double bound) {
  if (bound > 0.0) return lhs / bound - 1.0;
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

struct CommonFlags {
  std::string input;
  std::string mode;
  std::vector<double> grid = kDefaultGrid;
  std::string out;
};

struct SpecFlags {
  std::string kind = "gaussian_dense";
  std::size_t dim = 4;
  std::size_t count = 3;
  std::uint64_t seed = 0;
  std::size_t instances = 1;
};

ProblemFile load_checked(const CommonFlags& f) {
  ProblemFile p = load_problem(f.input);
  if (!f.mode.empty() && parse_mode(f.mode) != p.mode()) {
    throw ValueError("--mode " + f.mode + " does not match the problem file (" +
                     to_string(p.mode()) + ")");
  }
  return p;
}

// The weights and operator family a problem file describes.
struct LoadedProblem {
  WeightVector alpha;
  OperatorFamily ops;
};

LoadedProblem materialize(const ProblemFile& p) {
  if (p.operators) {
    return {WeightVector(*p.weights), OperatorFamily(*p.operators)};
  }
  VectorFamily y(*p.vectors);
  WeightVector alpha = p.weights ? WeightVector(*p.weights) : bessel_weighting(y);
  return {std::move(alpha), rank_one_family(y)};
}

Json input_digest(const ProblemFile& p) {
  Json j = Json::object();
  j["mode"] = to_string(p.mode());
  j["dim"] = p.dim;
  j["count"] = p.count();
  j["weights"] = p.weights ? "given" : "bessel";
  return j;
}

Json spec_digest(const InstanceSpec& s) {
  Json j = Json::object();
  j["kind"] = to_string(s.kind);
  j["dim"] = s.dim;
  j["count"] = s.count;
  j["seed"] = s.seed;
  return j;
}

int cmd_bound(const CommonFlags& f, const std::string& echo_path, std::ostream& out) {
  const ProblemFile p = load_checked(f);
  const std::string text = dump_json(bound_report(p, f.grid));
  if (!echo_path.empty()) write_text_file(echo_path, dump_json(problem_to_json(p)));
  emit(text, f.out, out);
  return kExitOk;
}

int cmd_verify(const CommonFlags& f, const SpecFlags& s, double tol, std::ostream& out) {
  if (!(tol > 0.0)) throw ValueError("--tol must be positive");
  VerificationResult result;
  Json input;
  if (!f.input.empty()) {
    const ProblemFile p = load_checked(f);
    const LoadedProblem lp = materialize(p);
    result = verify_instance(lp.alpha, lp.ops, tol, 0, f.grid);
    input = input_digest(p);
  } else {
    const InstanceSpec spec{parse_instance_kind(s.kind), s.dim, s.count, s.seed};
    result = verify_spec(spec, tol, f.grid);
    input = spec_digest(spec);
  }
  emit(dump_json(verify_report(result, input, tol)), f.out, out);
  return result.all_hold ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const CommonFlags& f, const SpecFlags& s, std::ostream& out) {
  const InstanceKind kind = parse_instance_kind(s.kind);
  std::vector<InstanceSpec> specs;
  for (std::size_t k = 0; k < s.instances; ++k) {
    InstanceSpec spec{kind, s.dim, s.count, s.seed + k};
    validate(spec);
    specs.push_back(spec);
  }
  // Reject a bad grid even when there is nothing to sweep.
  bound_catalog(WeightVector{Complex(1.0)}, NormProfile{{1.0}, {1.0}}, 1.0, f.grid, false);
  const std::vector<SweepRow> rows = slack_sweep(specs, f.grid);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(csv.str(), f.out, out);
  return kExitOk;
}

}  // namespace

Json bound_report(const ProblemFile& p, std::span<const double> grid) {
  Json doc = Json::object();
  doc["schema_version"] = std::string(kSchemaVersion);
  doc["command"] = "bound";
  doc["input"] = input_digest(p);
  doc["grid"] = grid_json(grid);

  std::vector<BoundReport> catalog;
  double lhs = 0.0;
  Json checks = Json::object();
  if (p.operators) {
    const WeightVector alpha(*p.weights);
    const OperatorFamily ops(*p.operators);
    lhs = lhs_norm_sq(alpha, ops);
    const bool orthogonal = is_orthogonal_family(ops.profile());
    catalog = bound_catalog(alpha, ops.profile(), lhs, grid, orthogonal);
    const PsdGapResult gap = cbs_operator_gap(alpha, ops);
    const NormCheck nc = cbs_norm_check(alpha, ops);
    checks["orthogonal_family"] = orthogonal;
    checks["operator_order_gap"] = gap.holds && gap.inner_psd;
    checks["operator_order_min_eigenvalue"] = gap.min_eigenvalue;
    checks["norm_form"] = nc.holds;
  } else {
    const VectorFamily y(*p.vectors);
    const WeightVector alpha = p.weights ? WeightVector(*p.weights) : bessel_weighting(y);
    lhs = rank_one_lhs_norm_sq(alpha, y);
    catalog = vector_bound_catalog(alpha, y, 1.0, grid, lhs);
    doc["x_norm_sq"] = 1.0;
  }
  doc["lhs"] = lhs;

  Json bounds = Json::array();
  bool dominance = true;
  double worst = 0.0;
  for (const BoundReport& r : catalog) {
    bounds.push_back(bound_entry(r));
    dominance = dominance && r.lhs_sq <= r.bound * (1.0 + kDominanceTol);
    worst = std::max(worst, margin(r.lhs_sq, r.bound));
  }
  doc["bounds"] = std::move(bounds);
  doc["tightest"] = bound_entry(select_tightest(catalog));
  checks["dominance"] = dominance;
  checks["worst_violation"] = worst;
  doc["checks"] = std::move(checks);
  return doc;
}

Json verify_report(const VerificationResult& result, const Json& input, double tol) {
  Json doc = Json::object();
  doc["schema_version"] = std::string(kSchemaVersion);
  doc["command"] = "verify";
  doc["input"] = input;
  doc["tol"] = tol;
  doc["all_hold"] = result.all_hold;
  doc["worst_violation"] = result.worst_violation;

  std::string classification = "ok";
  if (!result.all_hold) {
    classification = result.worst_violation <= kToleranceMargin ? "tolerance" : "counterexample";
  }
  doc["classification"] = classification;

  Json checks = Json::array();
  for (const Check& c : result.checks) {
    Json j = Json::object();
    j["name"] = c.name;
    j["exponents"] = c.exponents;
    j["lhs"] = c.lhs;
    j["bound"] = c.bound;
    j["holds"] = c.holds;
    j["slack_ratio"] = c.slack_ratio;
    j["margin"] = margin(c.lhs, c.bound);
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  return doc;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Norm bounds for weighted sums of operators", "cbsbound"};
  app.require_subcommand(1);

  CommonFlags common;
  SpecFlags spec;
  double tol = kDominanceTol;
  std::string echo;

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", common.grid, "Hoelder exponents, comma separated")->delimiter(',');
  };

  CLI::App* bound = app.add_subcommand("bound", "Evaluate the bound catalog on a problem file");
  bound->add_option("--input", common.input, "Problem file")->required();
  bound->add_option("--mode", common.mode, "operators or vectors (must match the file)");
  add_grid(bound);
  bound->add_option("--out", common.out, "Report path (default stdout)");
  bound->add_option("--echo", echo, "Also write the normalized problem file here");

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--kind", spec.kind, "Instance kind");
    sub->add_option("--dim", spec.dim, "Dimension d");
    sub->add_option("--count", spec.count, "Number of operators n");
    sub->add_option("--seed", spec.seed, "Seed");
  };

  CLI::App* verify = app.add_subcommand("verify", "Check every inequality on one instance");
  verify->add_option("--input", common.input, "Problem file (otherwise a generated instance)");
  verify->add_option("--mode", common.mode, "operators or vectors (must match the file)");
  add_spec(verify);
  verify->add_option("--tol", tol, "Relative dominance tolerance");
  add_grid(verify);
  verify->add_option("--out", common.out, "Report path (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "Slack table over generated instances as CSV");
  add_spec(sweep);
  sweep->add_option("--instances", spec.instances, "Consecutive seeds starting at --seed");
  add_grid(sweep);
  sweep->add_option("--out", common.out, "CSV path (default stdout)");

  std::vector<std::string> argv;
  argv.reserve(args.size());
  for (auto it = args.rbegin(); it != args.rend(); ++it) argv.push_back(*it);

  try {
    app.parse(argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*bound) return cmd_bound(common, echo, out);
    if (*verify) return cmd_verify(common, spec, tol, out);
    return cmd_sweep(common, spec, out);
  } catch (const NoConvergence& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumericalError;
  }
}

}  // namespace cbs
