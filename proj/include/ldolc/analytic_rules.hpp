#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ldolc/problem.hpp"
#include "ldolc/trajectory.hpp"

namespace ldolc {

/// One failed endpoint condition: x_t should equal `expected`.
struct ConditionViolation {
  std::size_t t = 0;
  int a_sign = 0;  ///< sign of a_t
  int p_sign = 0;  ///< sign of p_t
  Rational expected;
  Rational actual;
};

struct ViolationReport {
  std::vector<ConditionViolation> violations;
  bool empty() const { return violations.empty(); }
};

/// Endpoint conditions every optimal trajectory meets at each t > start with
/// p_t != 0: x_t sits at the upper end of its admissible interval when
/// p_t > 0 and at the lower end when p_t < 0. Checks t up to `through`
/// (default trajectory.last()). Throws PreconditionError for infeasible input.
ViolationReport check_necessary_conditions(const Problem& problem, const Trajectory& trajectory,
                                           std::optional<std::size_t> through = {});

/// Which odd-period clamp the positive-first alternating rule uses for
/// y_{2t-1}, t > 1: c_{2t-2} (derived from the endpoint conditions) or the
/// c_{2t} variant, kept to show it is not optimal.
enum class OddClampIndex { kDerived, kShiftedForward };

enum class AlternatingCase { kPositiveFirst, kNegativeFirst };

struct RuleResult {
  Trajectory trajectory;       ///< materialized head, zeros after
  Rational value;              ///< exact objective of the full closed-form trajectory
  Rational head_value;         ///< objective of `trajectory`
  Rational truncation_bound;   ///< value - head_value <= truncation_bound
  std::string rule;
  std::string variant;
};

/// Closed form for strictly alternating problems with min{c_t, c_t + a_t b} > 0:
///  - p_1 > 0 and a_t <= 0 at even t >= 2: y_1 = min{c_0 + a_0 x0, b},
///    y_t = 0 at even t >= 2, y_t = min{c_{t-1}, b} at odd t >= 3;
///  - p_1 < 0 and a_t <= 0 at odd t: y_t = 0 at odd t,
///    y_t = min{c_{t-1}, b} at even t >= 2.
/// The head is materialized through the first H with b sum_{t>H}|p_t| <= eps;
/// `value` sums the infinite closed form exactly. Throws PreconditionError
/// naming each failed hypothesis.
RuleResult alternating_optimal(const Problem& problem, const Rational& x0, const Rational& eps,
                               OddClampIndex index = OddClampIndex::kDerived);

AlternatingCase alternating_case(const Problem& problem);

/// Zero from the eventual-conclusiveness witness T on; the first T states
/// solve the finite problem with weights p_0..p_{T-1}.
RuleResult conclusive_optimal(const Problem& problem, const Rational& x0);

/// Forward clamp recursion y_{t+1} = min{c_t + a_t y_t, b} for t < T+,
/// zero from T- on; any periods strictly between are filled by finite
/// backward induction. Requires a_t >= 0 for t < T+.
RuleResult two_phase_optimal(const Problem& problem, const Rational& x0);

}  // namespace ldolc
