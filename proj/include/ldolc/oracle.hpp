#pragma once

#include <cstddef>
#include <cstdint>

#include "ldolc/problem.hpp"
#include "ldolc/trajectory.hpp"

namespace ldolc {

/// Discretization for the brute-force oracle. States x_1..x_{horizon-1}
/// range over the grid {0, b/N, ..., b}; with `augment`, period t+1 also
/// admits min{c_t + a_t x, b} for every candidate x of period t. States from
/// `horizon` on are zero.
struct GridSpec {
  std::size_t horizon = 1;
  std::size_t points = 1;
  bool augment = true;
  std::uint64_t budget = 10'000'000;  ///< cap on candidate states (or paths when enumerating)
};

struct OracleResult {
  Rational best_value;
  Trajectory best_trajectory;  ///< lexicographically smallest among the best
  mpz_class enumerated_count;  ///< feasible candidate trajectories considered
};

/// Exact maximum over every feasible candidate trajectory. Paths are scored
/// through a layered max-plus recursion, so the cost grows with the number of
/// candidates rather than the number of paths. Throws BudgetExceeded.
OracleResult brute_force(const Problem& problem, const Rational& x0, const GridSpec& grid);

/// Same search by explicit depth-first enumeration of every path; the
/// budget caps the product of candidate-set sizes.
OracleResult brute_force_enumerate(const Problem& problem, const Rational& x0,
                                   const GridSpec& grid);

struct GapBound {
  Rational bound;
  bool rigorous = false;  ///< false: the bound is only heuristic
};

/// Bound on (truncated optimum - oracle value): sum_{t<horizon} |p_t| d_t
/// with d_0 = b/N and d_{t+1} = max{b/N, max(a_t, 0) d_t}. With augmentation
/// an optimal trajectory rounds to the candidate
/// x'_{t+1} = min{floor_grid(x*_{t+1}), min{c_t + a_t x'_t, b}} losing at most
/// d_t per period. Without augmentation the plain grid floor is feasible only
/// when every a_t <= 0, and the b/N version is reported as heuristic otherwise.
GapBound oracle_gap_bound(const Problem& problem, const GridSpec& grid);

}  // namespace ldolc
