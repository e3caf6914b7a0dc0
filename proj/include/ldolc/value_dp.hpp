#pragma once

#include <cstddef>
#include <vector>

#include "ldolc/problem.hpp"
#include "ldolc/pwl.hpp"
#include "ldolc/trajectory.hpp"

namespace ldolc {

/// V_t(x) = p_t x + M(min{c_t + a_t x, b}) with M the prefix max of next.
/// Exact: the result's breakpoints are 0, b, the point where the clamp
/// activates and the preimages of M's breakpoints.
PwlConcaveFn bellman_backstep(const Problem& problem, std::size_t t, const PwlConcaveFn& next);

/// How the continuation beyond the horizon was accounted for.
enum class TerminalRule {
  kZeroTail,              ///< p_t = 0 past the horizon
  kEventuallyConclusive,  ///< p_t <= 0 past the horizon, zero continuation optimal
  kTruncated,             ///< positive weights dropped; value is a lower bound
  kSupplied,              ///< caller-supplied terminal function
};

const char* to_string(TerminalRule rule);

/// V^t for t = start..horizon, with V^{horizon+1} = terminal.
struct ValueTable {
  std::size_t start = 0;
  std::size_t horizon = 0;
  std::vector<PwlConcaveFn> functions;  ///< functions[i] is V^{start+i}
  PwlConcaveFn terminal = PwlConcaveFn::zero(1);
  TerminalRule rule = TerminalRule::kSupplied;

  /// V^t for start <= t <= horizon + 1.
  const PwlConcaveFn& at(std::size_t t) const;
};

ValueTable backward_induction(const Problem& problem, std::size_t start, std::size_t horizon,
                              const PwlConcaveFn& terminal,
                              TerminalRule rule = TerminalRule::kSupplied);

struct HorizonChoice {
  std::size_t horizon = 0;
  TerminalRule rule = TerminalRule::kTruncated;
  Rational bound;  ///< guaranteed optimality gap; 0 when exact
};

/// Exact horizons are preferred: the end of a zero-tailed p, or the witness
/// of eventual conclusiveness, whichever is smaller. Otherwise the smallest
/// H with b * sum_{t>H} |p_t| <= eps. Throws PreconditionError when no exact
/// horizon exists and eps <= 0.
HorizonChoice choose_horizon(const Problem& problem, const Rational& eps);

/// Optimality gap from ignoring periods after `horizon`: zero when p_t <= 0
/// for every t > horizon, b * sum_{t>horizon} |p_t| otherwise.
Rational truncation_bound(const Problem& problem, std::size_t horizon);

enum class Exactness { kExact, kEpsApprox };

struct SolveResult {
  Trajectory trajectory;  ///< trailing zeros trimmed
  Rational value;         ///< objective of trajectory, exactly
  Rational error_bound;   ///< optimum lies in [value, value + error_bound]
  std::size_t horizon_used = 0;
  Exactness exactness = Exactness::kExact;
  ValueTable table;
};

/// Forward extraction from table.start: x_{t+1} = min{u_t, y*} where u_t is
/// the transition bound and y* the smallest maximizer of V^{t+1}.
Trajectory greedy_extract(const Problem& problem, const ValueTable& table,
                          const Rational& x_start);

SolveResult solve(const Problem& problem, const Rational& x0, const Rational& eps);

/// Solve with a fixed horizon and zero terminal.
SolveResult solve_with_horizon(const Problem& problem, const Rational& x0, std::size_t horizon);

/// V^t(x_t) - p_t x_t - V^{t+1}(x_{t+1}) for t = trajectory.start()..table.horizon.
std::vector<Rational> bellman_residual(const Problem& problem, const ValueTable& table,
                                       const Trajectory& trajectory);

}  // namespace ldolc
