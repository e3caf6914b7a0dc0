#include "ldolc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ldolc/errors.hpp"

namespace ldolc {

namespace {

using Layers = std::vector<std::vector<Rational>>;

void check_grid(const Problem& problem, const Rational& x0, const GridSpec& grid) {
  if (grid.horizon < 1 || grid.points < 1) throw PreconditionError("grid needs H >= 1 and N >= 1");
  if (x0 < 0 || x0 > problem.b) throw PreconditionError("x0 outside [0, b]");
}

Layers candidate_layers(const Problem& problem, const Rational& x0, const GridSpec& grid) {
  Layers layers{{x0}};
  std::uint64_t total = 1;
  for (std::size_t t = 1; t < grid.horizon; ++t) {
    std::vector<Rational> layer;
    for (std::size_t i = 0; i <= grid.points; ++i) {
      layer.push_back(problem.b * Rational(i, grid.points));
    }
    if (grid.augment) {
      for (const auto& x : layers.back()) {
        const Rational reach = problem.reach(t - 1, x);
        if (reach >= 0) layer.push_back(min(reach, problem.b));
      }
    }
    for (auto& x : layer) x.canonicalize();
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    total += layer.size();
    if (total > grid.budget) throw BudgetExceeded("oracle candidate budget exceeded");
    layers.push_back(std::move(layer));
  }
  return layers;
}

// Zero tail after the last layer: 0 reachable from x_{H-1} and c_t >= 0 later.
bool tail_ok(const Problem& problem, std::size_t last, const Rational& x) {
  return problem.reach(last, x) >= 0;
}

bool later_tail_ok(const Problem& problem, std::size_t horizon) {
  return !first_violation(SequenceExpr(problem.c), SignCondition::kNonnegative, horizon);
}

}  // namespace

OracleResult brute_force(const Problem& problem, const Rational& x0, const GridSpec& grid) {
  check_grid(problem, x0, grid);
  const Layers layers = candidate_layers(problem, x0, grid);
  const std::size_t horizon = grid.horizon;
  if (!later_tail_ok(problem, horizon)) throw PreconditionError("no feasible zero tail");

  // best[t][i]: max of sum_{s>=t} p_s x_s from candidate i at period t.
  // choice[t][i]: index of the smallest best successor.
  std::vector<std::vector<std::optional<Rational>>> best(horizon);
  std::vector<std::vector<mpz_class>> count(horizon);
  std::vector<std::vector<std::size_t>> choice(horizon);
  {
    const std::size_t t = horizon - 1;
    const Rational p = problem.p.value_at(t);
    for (const auto& x : layers[t]) {
      const bool ok = tail_ok(problem, t, x);
      best[t].push_back(ok ? std::optional<Rational>(p * x) : std::nullopt);
      count[t].push_back(ok ? 1 : 0);
      choice[t].push_back(0);
    }
  }
  for (std::size_t t = horizon - 1; t-- > 0;) {
    const auto& next = layers[t + 1];
    // Running maximum over successor prefixes, first index on ties.
    std::vector<std::optional<Rational>> prefix_best(next.size());
    std::vector<std::size_t> prefix_arg(next.size());
    std::vector<mpz_class> prefix_count(next.size());
    for (std::size_t j = 0; j < next.size(); ++j) {
      prefix_best[j] = j > 0 ? prefix_best[j - 1] : std::nullopt;
      prefix_arg[j] = j > 0 ? prefix_arg[j - 1] : 0;
      prefix_count[j] = (j > 0 ? prefix_count[j - 1] : mpz_class(0)) + count[t + 1][j];
      if (best[t + 1][j] && (!prefix_best[j] || *best[t + 1][j] > *prefix_best[j])) {
        prefix_best[j] = best[t + 1][j];
        prefix_arg[j] = j;
      }
    }
    const Rational p = problem.p.value_at(t);
    for (const auto& x : layers[t]) {
      const Rational reach = problem.reach(t, x);
      // Successors form the prefix of candidates <= reach.
      const auto end = std::upper_bound(next.begin(), next.end(), reach);
      if (end == next.begin() || !prefix_best[end - next.begin() - 1]) {
        best[t].push_back(std::nullopt);
        count[t].push_back(0);
        choice[t].push_back(0);
        continue;
      }
      const std::size_t last = end - next.begin() - 1;
      best[t].push_back(p * x + *prefix_best[last]);
      count[t].push_back(prefix_count[last]);
      choice[t].push_back(prefix_arg[last]);
    }
  }
  if (!best[0][0]) throw PreconditionError("no feasible candidate trajectory");

  std::vector<Rational> head{x0};
  std::size_t node = 0;
  for (std::size_t t = 0; t + 1 < horizon; ++t) {
    node = choice[t][node];
    head.push_back(layers[t + 1][node]);
  }
  return OracleResult{*best[0][0], Trajectory(0, std::move(head)).trimmed(), count[0][0]};
}

OracleResult brute_force_enumerate(const Problem& problem, const Rational& x0,
                                   const GridSpec& grid) {
  check_grid(problem, x0, grid);
  GridSpec unbounded = grid;
  unbounded.budget = UINT64_MAX;
  const Layers layers = candidate_layers(problem, x0, unbounded);
  mpz_class paths = 1;
  for (const auto& layer : layers) paths *= static_cast<unsigned long>(layer.size());
  if (paths > mpz_class(std::to_string(grid.budget))) {
    throw BudgetExceeded("enumeration budget exceeded");
  }
  if (!later_tail_ok(problem, grid.horizon)) throw PreconditionError("no feasible zero tail");

  std::optional<Rational> best_value;
  std::vector<Rational> best_head;
  mpz_class feasible = 0;
  std::vector<Rational> head{x0};
  // Depth-first in ascending candidate order, so the first best found is the
  // lexicographically smallest.
  std::function<void(std::size_t, const Rational&)> visit = [&](std::size_t t,
                                                                 const Rational& partial) {
    if (t + 1 == grid.horizon) {
      if (!tail_ok(problem, t, head.back())) return;
      ++feasible;
      if (!best_value || partial > *best_value) {
        best_value = partial;
        best_head = head;
      }
      return;
    }
    const Rational reach = problem.reach(t, head.back());
    for (const auto& x : layers[t + 1]) {
      if (x > reach) break;
      head.push_back(x);
      visit(t + 1, partial + problem.p.value_at(t + 1) * x);
      head.pop_back();
    }
  };
  visit(0, problem.p.value_at(0) * x0);
  if (!best_value) throw PreconditionError("no feasible candidate trajectory");
  return OracleResult{*best_value, Trajectory(0, std::move(best_head)).trimmed(), feasible};
}

GapBound oracle_gap_bound(const Problem& problem, const GridSpec& grid) {
  if (grid.horizon < 1 || grid.points < 1) throw PreconditionError("grid needs H >= 1 and N >= 1");
  const Rational step = problem.b / Rational(grid.points);
  GapBound result{0, true};
  Rational drift = step;
  for (std::size_t t = 0; t < grid.horizon; ++t) {
    const Rational a = problem.a.value_at(t);
    if (grid.augment) {
      result.bound += abs(problem.p.value_at(t)) * drift;
      drift = max(step, Rational(max(a, Rational(0)) * drift));
    } else {
      result.bound += abs(problem.p.value_at(t)) * step;
      if (a > 0 && t + 1 < grid.horizon) result.rigorous = false;
    }
  }
  return result;
}

}  // namespace ldolc
