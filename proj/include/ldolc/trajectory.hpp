#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ldolc/problem.hpp"
#include "ldolc/rational.hpp"

namespace ldolc {

/// Closed interval [lo, hi]; lo == hi is allowed.
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

/// States x_T, ..., x_H from start period T, followed by an implicit zero
/// tail for every t > H.
class Trajectory {
 public:
  Trajectory() : head_{Rational(0)} {}
  Trajectory(std::size_t start, std::vector<Rational> head);

  std::size_t start() const { return start_; }
  /// Last period stored explicitly.
  std::size_t last() const { return start_ + head_.size() - 1; }
  const std::vector<Rational>& head() const { return head_; }

  /// State at period t >= start(); zero past the head.
  Rational at(std::size_t t) const;

  /// Same trajectory with trailing zeros after the start removed.
  Trajectory trimmed() const;

  bool operator==(const Trajectory&) const = default;

 private:
  std::size_t start_ = 0;
  std::vector<Rational> head_;
};

struct FeasibilityReport {
  bool feasible = true;
  std::optional<std::size_t> period;  ///< first period whose constraint fails
  std::string reason;
};

/// [0, min{c_t + a_t x, b}]. Throws PreconditionError for x outside [0, b]
/// or when c_t + a_t x < 0 (only possible for invalid problems).
Interval transition_set(const Problem& problem, const Rational& x, std::size_t t);

FeasibilityReport is_feasible(const Problem& problem, const Trajectory& trajectory);

/// The x_t compatible with neighbours x_{t-1} = x_prev and x_{t+1} = x_next,
/// by the sign of a_t. nullopt when no such x_t exists. Requires t >= 1.
std::optional<Interval> feasible_interval_at(const Problem& problem, std::size_t t,
                                             const Rational& x_prev,
                                             const Rational& x_next);

/// Keeps periods start..last_kept, zeros afterwards.
Trajectory zero_extend(const Trajectory& trajectory, std::size_t last_kept);

/// Feasibility verdict for y when every a_t <= 0, y starts where x starts and
/// 0 <= y_t <= x_t afterwards. Under those hypotheses the verdict is always
/// true. Throws PreconditionError when a hypothesis fails.
bool free_disposal_holds(const Problem& problem, const Trajectory& x, const Trajectory& y);

/// Replaces the start value x_T by y > x_T, keeping later states. Requires
/// a_T >= 0 and a feasible input; the result is re-verified.
Trajectory shift_initial(const Problem& problem, const Trajectory& trajectory,
                         std::size_t period, const Rational& y);

/// sum_t p_t x_t over the head; the zero tail contributes nothing.
Rational objective_value(const Problem& problem, const Trajectory& trajectory);

}  // namespace ldolc
