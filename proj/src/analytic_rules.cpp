#include "ldolc/analytic_rules.hpp"

#include <stdexcept>

#include "ldolc/errors.hpp"
#include "ldolc/value_dp.hpp"

namespace ldolc {

namespace {

std::string at_period(const std::string& what, std::size_t t) {
  return what + " at t=" + std::to_string(t);
}

void require_start(const Problem& problem, const Rational& x0) {
  if (x0 < 0 || x0 > problem.b) throw PreconditionError("x0 outside [0, b]");
}

// sum over t = first, first+2, ... of p_t * min{c_{t+shift}, b}, exactly.
// Needs p summable; past both tails the summand is a geometric series.
Rational strided_clamped_sum(const Problem& problem, std::size_t first, int shift) {
  const std::size_t tails = std::max(problem.p.tail_start(), problem.c.tail_start() + 1);
  constexpr std::size_t kLimit = 1'000'000;
  Rational total = 0;
  for (std::size_t t = first;; t += 2) {
    const std::size_t ct = t + shift;
    const Rational cap = min(problem.c.value_at(ct), problem.b);
    if (t >= tails) {
      const GeoTerm pg = problem.p.tail_term_from(t);
      const GeoTerm cg = problem.c.tail_term_from(ct);
      const Rational p_step = pg.ratio * pg.ratio;
      if (pg.coef == 0) return total;
      if (cg.coef <= problem.b) {
        // With stride 2 the c ratio enters squared, so c never exceeds b
        // again: summands are p_t c_{t+shift}.
        return total + pg.coef * cg.coef / (1 - p_step * cg.ratio * cg.ratio);
      }
      if (cg.ratio * cg.ratio == 1) return total + pg.coef * problem.b / (1 - p_step);
    }
    total += problem.p.value_at(t) * cap;
    if (t > kLimit) throw std::runtime_error("closed-form tail sum did not settle");
  }
}

}  // namespace

ViolationReport check_necessary_conditions(const Problem& problem, const Trajectory& trajectory,
                                           std::optional<std::size_t> through) {
  if (!is_feasible(problem, trajectory).feasible) {
    throw PreconditionError("necessary conditions checked on an infeasible trajectory");
  }
  ViolationReport report;
  const std::size_t last = through.value_or(trajectory.last());
  for (std::size_t t = trajectory.start() + 1; t <= last; ++t) {
    const Coefficients k = problem.at(t);
    if (k.p == 0) continue;
    const Rational x = trajectory.at(t);
    const Rational x_next = trajectory.at(t + 1);
    const Rational upper = min(problem.reach(t - 1, trajectory.at(t - 1)), problem.b);
    Rational expected;
    if (k.p > 0) {
      expected = k.a < 0 ? min(Rational((x_next - k.c) / k.a), upper) : upper;
    } else {
      expected = k.a > 0 ? max(Rational(0), Rational((x_next - k.c) / k.a)) : Rational(0);
    }
    if (x != expected) report.violations.push_back({t, sign(k.a), sign(k.p), expected, x});
  }
  return report;
}

AlternatingCase alternating_case(const Problem& problem) {
  return problem.p.value_at(1) > 0 ? AlternatingCase::kPositiveFirst
                                   : AlternatingCase::kNegativeFirst;
}

RuleResult alternating_optimal(const Problem& problem, const Rational& x0, const Rational& eps,
                               OddClampIndex index) {
  require_start(problem, x0);
  std::vector<std::string> failures;
  const ProblemClass cls = classify(problem);
  if (!cls.strictly_alternating) failures.push_back("weights are not strictly alternating");
  if (!cls.positivity_margin) {
    SequenceExpr top;
    top.add(1, problem.c).add(problem.b, problem.a);
    auto t = first_violation(SequenceExpr(problem.c), SignCondition::kPositive);
    if (!t) t = first_violation(top, SignCondition::kPositive);
    failures.push_back(at_period("min{c_t, c_t + a_t b} > 0 fails", t.value_or(0)));
  }
  if (eps <= 0) failures.push_back("eps must be positive");
  const AlternatingCase which = alternating_case(problem);
  if (which == AlternatingCase::kPositiveFirst) {
    if (auto t = first_violation(SequenceExpr(problem.a), SignCondition::kNonpositive, 2,
                                 IndexFilter::kEven)) {
      failures.push_back(at_period("a_t > 0 at an even period", *t));
    }
  } else if (auto t = first_violation(SequenceExpr(problem.a), SignCondition::kNonpositive, 1,
                                      IndexFilter::kOdd)) {
    failures.push_back(at_period("a_t > 0 at an odd period", *t));
  }
  if (!failures.empty()) throw PreconditionError(failures);

  const bool positive_first = which == AlternatingCase::kPositiveFirst;
  const int odd_shift = index == OddClampIndex::kDerived ? -1 : 1;
  auto state = [&](std::size_t t) -> Rational {
    if (t == 0) return x0;
    if (positive_first) {
      if (t == 1) return min(problem.reach(0, x0), problem.b);
      if (t % 2 == 0) return 0;
      return min(problem.c.value_at(t + odd_shift), problem.b);
    }
    if (t % 2 == 1) return 0;
    return min(problem.c.value_at(t - 1), problem.b);
  };

  const HorizonChoice horizon = choose_horizon(
      Problem{problem.b, problem.p, TailedSequence::zero(), TailedSequence::zero()}, eps);
  std::vector<Rational> head;
  for (std::size_t t = 0; t <= horizon.horizon; ++t) head.push_back(state(t));
  Trajectory trajectory = Trajectory(0, std::move(head)).trimmed();

  Rational value = problem.p.value_at(0) * x0;
  if (positive_first) {
    value += problem.p.value_at(1) * state(1) + strided_clamped_sum(problem, 3, odd_shift);
  } else {
    value += strided_clamped_sum(problem, 2, -1);
  }
  Rational head_value = objective_value(problem, trajectory);
  return RuleResult{std::move(trajectory), std::move(value),           std::move(head_value),
                    horizon.bound,         "alternating",
                    std::string(positive_first ? "positive-first" : "negative-first") +
                        (index == OddClampIndex::kDerived ? "" : "/shifted-forward")};
}

RuleResult conclusive_optimal(const Problem& problem, const Rational& x0) {
  require_start(problem, x0);
  const auto witness = classify(problem).eventually_conclusive;
  if (!witness) throw PreconditionError("problem is not eventually conclusive");
  Trajectory trajectory(0, {x0});
  if (*witness > 1) {
    const ValueTable table =
        backward_induction(problem, 0, *witness - 1, PwlConcaveFn::zero(problem.b));
    trajectory = greedy_extract(problem, table, x0).trimmed();
  }
  Rational value = objective_value(problem, trajectory);
  return RuleResult{std::move(trajectory), value, value, 0, "conclusive",
                    "zero-from-" + std::to_string(*witness)};
}

RuleResult two_phase_optimal(const Problem& problem, const Rational& x0) {
  require_start(problem, x0);
  const auto phases = classify(problem).two_phase;
  if (!phases) throw PreconditionError("problem is not two-phase");
  std::vector<std::string> failures;
  for (std::size_t t = 0; t < phases->t_plus; ++t) {
    if (problem.a.value_at(t) < 0) failures.push_back(at_period("a_t < 0 in the leading phase", t));
  }
  if (!failures.empty()) throw PreconditionError(failures);

  std::vector<Rational> head{x0};
  for (std::size_t t = 0; t < phases->t_plus; ++t) {
    head.push_back(min(problem.reach(t, head.back()), problem.b));
  }
  std::string variant = "no-gap";
  if (phases->t_minus > phases->t_plus + 1) {
    const ValueTable table = backward_induction(problem, phases->t_plus, phases->t_minus - 1,
                                                PwlConcaveFn::zero(problem.b));
    const Trajectory gap = greedy_extract(problem, table, head.back());
    head.insert(head.end(), gap.head().begin() + 1, gap.head().end());
    variant = "gap-filled";
  }
  Trajectory trajectory = Trajectory(0, std::move(head)).trimmed();
  Rational value = objective_value(problem, trajectory);
  return RuleResult{std::move(trajectory), value, value, 0, "two-phase", variant};
}

}  // namespace ldolc
