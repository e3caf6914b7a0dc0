#include "ldolc/value_dp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ldolc/errors.hpp"

namespace ldolc {

PwlConcaveFn bellman_backstep(const Problem& problem, std::size_t t, const PwlConcaveFn& next) {
  const Rational& b = problem.b;
  if (next.domain_end() != b) throw std::invalid_argument("value function domain is not [0, b]");
  const Coefficients k = problem.at(t);
  if (problem.reach(t, 0) < 0 || problem.reach(t, b) < 0) {
    throw PreconditionError("c_t + a_t x < 0 on [0, b] at t=" + std::to_string(t));
  }
  const PwlConcaveFn inner = pwl_prefix_max(next);

  std::vector<Rational> xs{Rational(0), b};
  if (k.a != 0) {
    auto add_preimage = [&](const Rational& y) {
      Rational x = (y - k.c) / k.a;
      if (0 < x && x < b) xs.push_back(std::move(x));
    };
    add_preimage(b);
    for (const auto& point : inner.breakpoints()) {
      if (0 < point.x && point.x < b) add_preimage(point.x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Breakpoint> points;
  points.reserve(xs.size());
  for (auto& x : xs) {
    Rational value = k.p * x + inner(min(problem.reach(t, x), b));
    points.push_back({std::move(x), std::move(value)});
  }
  return PwlConcaveFn(std::move(points));
}

const char* to_string(TerminalRule rule) {
  switch (rule) {
    case TerminalRule::kZeroTail: return "zero-tail";
    case TerminalRule::kEventuallyConclusive: return "eventually-conclusive";
    case TerminalRule::kTruncated: return "truncated";
    case TerminalRule::kSupplied: return "supplied";
  }
  return "unknown";
}

const PwlConcaveFn& ValueTable::at(std::size_t t) const {
  if (t < start || t > horizon + 1) throw std::out_of_range("period outside value table");
  return t == horizon + 1 ? terminal : functions[t - start];
}

ValueTable backward_induction(const Problem& problem, std::size_t start, std::size_t horizon,
                              const PwlConcaveFn& terminal, TerminalRule rule) {
  if (start > horizon) throw PreconditionError("backward induction needs start <= horizon");
  ValueTable table{start, horizon, {}, terminal, rule};
  std::vector<PwlConcaveFn> reversed;
  reversed.reserve(horizon - start + 1);
  const PwlConcaveFn* next = &table.terminal;
  for (std::size_t t = horizon + 1; t-- > start;) {
    reversed.push_back(bellman_backstep(problem, t, *next));
    if (!reversed.back().is_concave()) {
      throw std::logic_error("backstep lost concavity at t=" + std::to_string(t));
    }
    next = &reversed.back();
  }
  table.functions.assign(std::make_move_iterator(reversed.rbegin()),
                         std::make_move_iterator(reversed.rend()));
  return table;
}

Rational truncation_bound(const Problem& problem, std::size_t horizon) {
  if (!first_violation(SequenceExpr(problem.p), SignCondition::kNonpositive, horizon + 1)) {
    return 0;
  }
  return problem.b * problem.p.abs_tail_sum(horizon + 1);
}

HorizonChoice choose_horizon(const Problem& problem, const Rational& eps) {
  std::optional<HorizonChoice> exact;
  if (problem.p.has_zero_tail()) {
    const std::size_t len = problem.p.prefix().size();
    exact = HorizonChoice{len == 0 ? 0 : len - 1, TerminalRule::kZeroTail, 0};
  }
  if (auto witness = classify(problem).eventually_conclusive) {
    if (!exact || *witness < exact->horizon) {
      exact = HorizonChoice{*witness, TerminalRule::kEventuallyConclusive, 0};
    }
  }
  if (exact) return *exact;
  if (eps <= 0) throw PreconditionError("eps must be positive for problems without exact horizon");

  constexpr std::size_t kMaxHorizon = 100'000;
  for (std::size_t h = 0; h <= kMaxHorizon; ++h) {
    Rational bound = problem.b * problem.p.abs_tail_sum(h + 1);
    if (bound <= eps) return {h, TerminalRule::kTruncated, std::move(bound)};
  }
  throw PreconditionError("no horizon up to 100000 meets the requested eps");
}

Trajectory greedy_extract(const Problem& problem, const ValueTable& table,
                          const Rational& x_start) {
  std::vector<Rational> head{x_start};
  for (std::size_t t = table.start; t <= table.horizon; ++t) {
    const Interval reachable = transition_set(problem, head.back(), t);
    head.push_back(min(reachable.hi, table.at(t + 1).smallest_maximizer()));
  }
  return Trajectory(table.start, std::move(head));
}

namespace {

SolveResult solve_on_table(const Problem& problem, const Rational& x0, ValueTable table,
                           Rational bound) {
  if (x0 < 0 || x0 > problem.b) throw PreconditionError("x0 outside [0, b]");
  Trajectory trajectory = greedy_extract(problem, table, x0).trimmed();
  Rational value = objective_value(problem, trajectory);
  if (value != table.at(0)(x0)) {
    throw std::logic_error("extracted trajectory does not attain V^0(x0)");
  }
  const std::size_t horizon = table.horizon;
  const Exactness exactness = bound == 0 ? Exactness::kExact : Exactness::kEpsApprox;
  return SolveResult{std::move(trajectory), std::move(value), std::move(bound), horizon,
                     exactness, std::move(table)};
}

}  // namespace

SolveResult solve(const Problem& problem, const Rational& x0, const Rational& eps) {
  HorizonChoice choice = choose_horizon(problem, eps);
  ValueTable table =
      backward_induction(problem, 0, choice.horizon, PwlConcaveFn::zero(problem.b), choice.rule);
  return solve_on_table(problem, x0, std::move(table), std::move(choice.bound));
}

SolveResult solve_with_horizon(const Problem& problem, const Rational& x0, std::size_t horizon) {
  Rational bound = truncation_bound(problem, horizon);
  const TerminalRule rule = bound == 0 ? TerminalRule::kEventuallyConclusive : TerminalRule::kTruncated;
  ValueTable table =
      backward_induction(problem, 0, horizon, PwlConcaveFn::zero(problem.b), rule);
  return solve_on_table(problem, x0, std::move(table), std::move(bound));
}

std::vector<Rational> bellman_residual(const Problem& problem, const ValueTable& table,
                                       const Trajectory& trajectory) {
  if (trajectory.start() < table.start) {
    throw PreconditionError("trajectory starts before the value table");
  }
  std::vector<Rational> residuals;
  for (std::size_t t = trajectory.start(); t <= table.horizon; ++t) {
    const Rational xt = trajectory.at(t);
    residuals.push_back(table.at(t)(xt) - problem.p.value_at(t) * xt -
                        table.at(t + 1)(trajectory.at(t + 1)));
  }
  return residuals;
}

}  // namespace ldolc
