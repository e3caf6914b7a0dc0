#include "ldolc/trajectory.hpp"

#include <stdexcept>

#include "ldolc/errors.hpp"

namespace ldolc {

Trajectory::Trajectory(std::size_t start, std::vector<Rational> head)
    : start_(start), head_(std::move(head)) {
  if (head_.empty()) throw std::invalid_argument("trajectory needs at least its start state");
  for (auto& x : head_) x.canonicalize();
}

Rational Trajectory::at(std::size_t t) const {
  if (t < start_) throw std::out_of_range("period precedes trajectory start");
  const std::size_t i = t - start_;
  return i < head_.size() ? head_[i] : Rational(0);
}

Trajectory Trajectory::trimmed() const {
  std::vector<Rational> head = head_;
  while (head.size() > 1 && head.back() == 0) head.pop_back();
  return Trajectory(start_, std::move(head));
}

Interval transition_set(const Problem& problem, const Rational& x, std::size_t t) {
  if (x < 0 || x > problem.b) {
    throw PreconditionError("state " + to_string(x) + " outside [0, b] at t=" + std::to_string(t));
  }
  const Rational reach = problem.reach(t, x);
  if (reach < 0) {
    throw PreconditionError("empty transition set at t=" + std::to_string(t));
  }
  return {0, min(reach, problem.b)};
}

FeasibilityReport is_feasible(const Problem& problem, const Trajectory& trajectory) {
  const auto fail = [](std::size_t t, std::string reason) {
    return FeasibilityReport{false, t, std::move(reason)};
  };
  const auto& head = trajectory.head();
  for (std::size_t i = 0; i < head.size(); ++i) {
    const std::size_t t = trajectory.start() + i;
    if (head[i] < 0 || head[i] > problem.b) return fail(t, "x_t outside [0, b]");
    if (i + 1 < head.size() && head[i + 1] > problem.reach(t, head[i])) {
      return fail(t, "x_{t+1} > c_t + a_t x_t");
    }
  }
  // Zero tail: 0 must be reachable from x_H, and from 0 at every later t.
  const std::size_t last = trajectory.last();
  if (problem.reach(last, head.back()) < 0) return fail(last, "zero tail unreachable");
  if (auto t = first_violation(SequenceExpr(problem.c), SignCondition::kNonnegative, last + 1)) {
    return fail(*t, "c_t < 0 in the zero tail");
  }
  return {};
}

std::optional<Interval> feasible_interval_at(const Problem& problem, std::size_t t,
                                             const Rational& x_prev,
                                             const Rational& x_next) {
  if (t == 0) throw PreconditionError("feasible_interval_at needs t >= 1");
  const Coefficients k = problem.at(t);
  const Rational upper = min(problem.reach(t - 1, x_prev), problem.b);
  Interval result{0, upper};
  if (k.a > 0) {
    result.lo = max(Rational(0), Rational((x_next - k.c) / k.a));
  } else if (k.a == 0) {
    if (x_next > k.c) return std::nullopt;
  } else {
    result.hi = min(Rational((x_next - k.c) / k.a), upper);
  }
  if (result.hi < result.lo) return std::nullopt;
  return result;
}

Trajectory zero_extend(const Trajectory& trajectory, std::size_t last_kept) {
  if (last_kept < trajectory.start()) {
    throw PreconditionError("zero_extend: cut precedes trajectory start");
  }
  const std::size_t keep = last_kept - trajectory.start() + 1;
  if (keep >= trajectory.head().size()) return trajectory;
  return Trajectory(trajectory.start(),
                    std::vector<Rational>(trajectory.head().begin(),
                                          trajectory.head().begin() + keep));
}

bool free_disposal_holds(const Problem& problem, const Trajectory& x, const Trajectory& y) {
  std::vector<std::string> failures;
  if (auto t = first_violation(SequenceExpr(problem.a), SignCondition::kNonpositive)) {
    failures.push_back("a_t > 0 at t=" + std::to_string(*t));
  }
  if (!is_feasible(problem, x).feasible) failures.push_back("dominating trajectory infeasible");
  if (x.start() != y.start() || x.head().front() != y.head().front()) {
    failures.push_back("trajectories do not share their start");
  }
  const std::size_t last = std::max(x.last(), y.last());
  for (std::size_t t = x.start() + 1; t <= last && failures.empty(); ++t) {
    const Rational yt = y.at(t);
    if (yt < 0 || yt > x.at(t)) {
      failures.push_back("0 <= y_t <= x_t fails at t=" + std::to_string(t));
    }
  }
  if (!failures.empty()) throw PreconditionError(failures);
  return is_feasible(problem, y).feasible;
}

Trajectory shift_initial(const Problem& problem, const Trajectory& trajectory,
                         std::size_t period, const Rational& y) {
  std::vector<std::string> failures;
  if (period != trajectory.start()) failures.push_back("period is not the trajectory start");
  if (problem.a.value_at(period) < 0) {
    failures.push_back("a_T < 0 at T=" + std::to_string(period));
  }
  if (!(y > trajectory.head().front())) failures.push_back("new start must exceed x_T");
  if (y > problem.b) failures.push_back("new start exceeds b");
  if (!is_feasible(problem, trajectory).feasible) failures.push_back("input trajectory infeasible");
  if (!failures.empty()) throw PreconditionError(failures);

  std::vector<Rational> head = trajectory.head();
  head.front() = y;
  Trajectory shifted(period, std::move(head));
  if (!is_feasible(problem, shifted).feasible) {
    throw std::logic_error("initial shift produced an infeasible trajectory");
  }
  return shifted;
}

Rational objective_value(const Problem& problem, const Trajectory& trajectory) {
  Rational total = 0;
  const auto& head = trajectory.head();
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (head[i] != 0) total += problem.p.value_at(trajectory.start() + i) * head[i];
  }
  return total;
}

}  // namespace ldolc
