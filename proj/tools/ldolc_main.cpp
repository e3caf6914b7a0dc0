// Command-line front end: validate, classify, solve, certify, check, rules,
// oracle and compare over JSON problem documents.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ldolc/analytic_rules.hpp"
#include "ldolc/certificates.hpp"
#include "ldolc/errors.hpp"
#include "ldolc/io.hpp"
#include "ldolc/oracle.hpp"
#include "ldolc/value_dp.hpp"

namespace {

using namespace ldolc;
using io::json;

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kPreconditionFailure = 2,
  kBudgetExceeded = 3,
  kParseError = 4,
};

struct Options {
  std::string problem_path;
  std::string x0;
  std::string eps;
  std::string out_dir;
  std::string trajectory_path;
  std::string rule = "auto";
  long horizon = -1;
  std::size_t points = 20;
  std::uint64_t budget = 10'000'000;
  bool relaxed = false;
  bool no_augment = false;
  bool shifted_odd_index = false;
  bool dump_values = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_artifact(const Options& opts, const std::string& name, const std::string& content) {
  if (opts.out_dir.empty()) return;
  std::filesystem::create_directories(opts.out_dir);
  std::ofstream out(std::filesystem::path(opts.out_dir) / name, std::ios::binary);
  out << content;
}

struct Context {
  io::ProblemDocument doc;
  ValidationMode mode = ValidationMode::kStrict;
};

Rational require_x0(const Options& opts, const Context& ctx) {
  if (!opts.x0.empty()) return parse_rational(opts.x0);
  if (ctx.doc.defaults.x0) return *ctx.doc.defaults.x0;
  throw PreconditionError("--x0 is required (no default in the problem document)");
}

Rational eps_of(const Options& opts, const Context& ctx) {
  if (!opts.eps.empty()) return parse_rational(opts.eps);
  if (ctx.doc.defaults.eps) return *ctx.doc.defaults.eps;
  return Rational(1, 1'000'000);
}

std::optional<std::size_t> horizon_of(const Options& opts, const Context& ctx) {
  if (opts.horizon >= 0) return static_cast<std::size_t>(opts.horizon);
  return ctx.doc.defaults.horizon;
}

SolveResult run_solve(const Options& opts, const Context& ctx, const Rational& x0) {
  if (auto h = horizon_of(opts, ctx)) return solve_with_horizon(ctx.doc.problem, x0, *h);
  return solve(ctx.doc.problem, x0, eps_of(opts, ctx));
}

json solve_json(const SolveResult& r) {
  return {{"value", to_string(r.value)},
          {"error_bound", to_string(r.error_bound)},
          {"horizon_used", r.horizon_used},
          {"terminal_rule", to_string(r.table.rule)},
          {"exactness", r.exactness == Exactness::kExact ? "exact" : "eps_approx"},
          {"trajectory", io::to_json(r.trajectory)}};
}

Trajectory trajectory_input(const Options& opts, const Context& ctx, const Rational* x0,
                            std::optional<SolveResult>& solved) {
  if (!opts.trajectory_path.empty()) {
    return io::parse_trajectory_csv(read_file(opts.trajectory_path));
  }
  solved = run_solve(opts, ctx, *x0);
  return solved->trajectory;
}

RuleResult run_rule(const Options& opts, const Context& ctx, const Rational& x0) {
  const Problem& problem = ctx.doc.problem;
  const OddClampIndex index =
      opts.shifted_odd_index ? OddClampIndex::kShiftedForward : OddClampIndex::kDerived;
  if (opts.rule == "alternating") return alternating_optimal(problem, x0, eps_of(opts, ctx), index);
  if (opts.rule == "conclusive") return conclusive_optimal(problem, x0);
  if (opts.rule == "two-phase") return two_phase_optimal(problem, x0);
  if (opts.rule != "auto") throw PreconditionError("unknown rule " + opts.rule);
  const ProblemClass cls = classify(problem);
  if (cls.two_phase) {
    bool leading_nonnegative = true;
    for (std::size_t t = 0; t < cls.two_phase->t_plus; ++t) {
      leading_nonnegative = leading_nonnegative && problem.a.value_at(t) >= 0;
    }
    if (leading_nonnegative) return two_phase_optimal(problem, x0);
  }
  if (cls.eventually_conclusive) return conclusive_optimal(problem, x0);
  if (cls.strictly_alternating) return alternating_optimal(problem, x0, eps_of(opts, ctx), index);
  throw PreconditionError("no closed-form rule applies to this problem");
}

int run(const std::string& command, const Options& opts, json& report) {
  Context ctx{io::parse_problem_document(read_file(opts.problem_path))};
  ctx.mode = opts.relaxed || ctx.doc.defaults.relaxed_validation ? ValidationMode::kRelaxed
                                                                  : ValidationMode::kStrict;
  report["inputs"] = {{"problem", opts.problem_path},
                      {"validation", ctx.mode == ValidationMode::kStrict ? "strict" : "relaxed"}};
  const ValidationReport validation = validate(ctx.doc.problem, ctx.mode);
  report["results"]["validation"] = io::to_json(validation);
  if (command == "validate" || !validation.ok()) {
    return validation.ok() ? kOk : kValidationFailure;
  }
  const Problem& problem = ctx.doc.problem;
  json& results = report["results"];

  if (command == "classify") {
    results["class"] = io::to_json(classify(problem));
    return kOk;
  }

  const Rational x0 = require_x0(opts, ctx);
  report["inputs"]["x0"] = to_string(x0);

  if (command == "solve") {
    const SolveResult solved = run_solve(opts, ctx, x0);
    results["solve"] = solve_json(solved);
    write_artifact(opts, "trajectory.csv", io::trajectory_csv(solved.trajectory));
    if (opts.dump_values) write_artifact(opts, "values.csv", io::value_table_csv(solved.table));
    return kOk;
  }

  if (command == "certify") {
    std::optional<SolveResult> solved;
    const Trajectory trajectory = trajectory_input(opts, ctx, &x0, solved);
    if (solved) results["solve"] = solve_json(*solved);
    const auto certificates = compute_certificates(problem, trajectory);
    const CertificateReport verdict = verify_certificate(problem, trajectory, certificates);
    results["certificates"] = io::to_json(certificates);
    results["report"] = io::to_json(verdict);
    write_artifact(opts, "certificates.json", io::to_json(certificates).dump(2) + "\n");
    return verdict.ok() ? kOk : kValidationFailure;
  }

  if (command == "check") {
    std::optional<SolveResult> solved;
    const Trajectory trajectory = trajectory_input(opts, ctx, &x0, solved);
    if (solved) results["solve"] = solve_json(*solved);
    const FeasibilityReport feasibility = is_feasible(problem, trajectory);
    results["feasible"] = feasibility.feasible;
    if (!feasibility.feasible) {
      results["infeasible_at"] = *feasibility.period;
      results["reason"] = feasibility.reason;
      return kValidationFailure;
    }
    results["objective"] = to_string(objective_value(problem, trajectory));
    const ViolationReport violations = check_necessary_conditions(problem, trajectory);
    results["violations"] = io::to_json(violations);
    if (solved) {
      std::vector<std::string> residuals;
      for (const auto& r : bellman_residual(problem, solved->table, trajectory)) {
        residuals.push_back(to_string(r));
      }
      results["bellman_residuals"] = residuals;
    }
    return violations.empty() ? kOk : kValidationFailure;
  }

  if (command == "rules") {
    const RuleResult rule = run_rule(opts, ctx, x0);
    results["rule"] = io::to_json(rule);
    results["feasible"] = is_feasible(problem, rule.trajectory).feasible;
    write_artifact(opts, "trajectory.csv", io::trajectory_csv(rule.trajectory));
    return kOk;
  }

  if (command == "oracle" || command == "compare") {
    GridSpec grid;
    grid.points = opts.points;
    grid.augment = !opts.no_augment;
    grid.budget = opts.budget;
    if (const char* env = std::getenv("LDOLC_ORACLE_BUDGET")) grid.budget = std::stoull(env);

    if (command == "oracle") {
      const auto h = horizon_of(opts, ctx);
      if (!h) throw PreconditionError("--horizon is required for the oracle");
      grid.horizon = *h;
      const OracleResult oracle = brute_force(problem, x0, grid);
      const GapBound gap = oracle_gap_bound(problem, grid);
      results["oracle"] = io::to_json(oracle);
      results["gap_bound"] = {{"bound", to_string(gap.bound)},
                              {"quality", gap.rigorous ? "rigorous" : "heuristic"}};
      return kOk;
    }

    const SolveResult solved = run_solve(opts, ctx, x0);
    results["solve"] = solve_json(solved);
    bool agree = true;
    try {
      const RuleResult rule = run_rule(opts, ctx, x0);
      const Rational diff = rule.value - solved.value;
      const bool within = diff >= 0 && diff <= solved.error_bound;
      results["rules"] = io::to_json(rule);
      results["rules"]["difference_from_solve"] = to_string(diff);
      results["rules"]["within_bound"] = within;
      agree = agree && within;
    } catch (const PreconditionError& e) {
      results["rules"] = {{"skipped", e.what()}};
    }
    grid.horizon = horizon_of(opts, ctx).value_or(solved.horizon_used + 1);
    try {
      const OracleResult oracle = brute_force(problem, x0, grid);
      const GapBound gap = oracle_gap_bound(problem, grid);
      const bool below = oracle.best_value <= solved.value + solved.error_bound;
      const bool close = !gap.rigorous || solved.exactness != Exactness::kExact ||
                         solved.value <= oracle.best_value + gap.bound;
      results["oracle"] = io::to_json(oracle);
      results["oracle"]["gap_bound"] = to_string(gap.bound);
      results["oracle"]["quality"] = gap.rigorous ? "rigorous" : "heuristic";
      results["oracle"]["consistent"] = below && close;
      agree = agree && below && close;
    } catch (const BudgetExceeded& e) {
      results["oracle"] = {{"skipped", e.what()}};
    }
    results["agree"] = agree;
    return agree ? kOk : kValidationFailure;
  }
  throw PreconditionError("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver and verifier for linear dynamic optimization problems"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* sub, bool needs_x0) {
    sub->add_option("problem", opts.problem_path, "Problem JSON document")->required();
    sub->add_flag("--relaxed-validation", opts.relaxed,
                  "Waive summability of c and a (p must still be summable)");
    sub->add_option("--out-dir", opts.out_dir, "Directory for CSV artifacts");
    if (needs_x0) {
      sub->add_option("--x0", opts.x0, "Initial state (rational or decimal)");
      sub->add_option("--eps", opts.eps, "Tolerance for truncated solves");
      sub->add_option("--horizon", opts.horizon, "Fixed horizon override");
    }
  };
  add_common(app.add_subcommand("validate", "Check problem assumptions"), false);
  add_common(app.add_subcommand("classify", "Report the problem classes"), false);
  auto* solve_cmd = app.add_subcommand("solve", "Optimal trajectory by exact dynamic programming");
  add_common(solve_cmd, true);
  solve_cmd->add_flag("--dump-values", opts.dump_values, "Write values.csv to --out-dir");
  auto* certify_cmd = app.add_subcommand("certify", "Compute and verify dual multipliers");
  add_common(certify_cmd, true);
  certify_cmd->add_option("--trajectory", opts.trajectory_path, "Trajectory CSV (default: solve)");
  auto* check_cmd = app.add_subcommand("check", "Feasibility and endpoint conditions");
  add_common(check_cmd, true);
  check_cmd->add_option("--trajectory", opts.trajectory_path, "Trajectory CSV (default: solve)");
  auto* rules_cmd = app.add_subcommand("rules", "Closed-form optimal trajectory");
  add_common(rules_cmd, true);
  rules_cmd->add_option("--rule", opts.rule, "auto | alternating | conclusive | two-phase");
  rules_cmd->add_flag("--shifted-odd-index", opts.shifted_odd_index,
                      "Alternating rule: clamp odd periods with c_{t+1} instead of c_{t-1}");
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force grid search");
  add_common(oracle_cmd, true);
  auto* compare_cmd = app.add_subcommand("compare", "Solve, closed-form rule and oracle side by side");
  add_common(compare_cmd, true);
  for (auto* sub : {oracle_cmd, compare_cmd}) {
    sub->add_option("--points", opts.points, "Grid intervals N");
    sub->add_flag("--no-augment", opts.no_augment, "Disable clamp-value candidates");
    sub->add_option("--budget", opts.budget, "Candidate budget (env LDOLC_ORACLE_BUDGET overrides)");
  }
  compare_cmd->add_option("--rule", opts.rule, "auto | alternating | conclusive | two-phase");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json report = {{"command", command}, {"results", json::object()}};
  int status = kOk;
  try {
    status = run(command, opts, report);
  } catch (const ParseError& e) {
    status = kParseError;
    report["error"] = e.what();
  } catch (const PreconditionError& e) {
    status = kPreconditionFailure;
    report["error"] = e.what();
    report["failures"] = e.failures();
  } catch (const BudgetExceeded& e) {
    status = kBudgetExceeded;
    report["error"] = e.what();
  } catch (const std::exception& e) {
    status = kPreconditionFailure;
    report["error"] = e.what();
  }
  report["exit_status"] = status;
  std::cout << report.dump(2) << std::endl;
  return status;
}
