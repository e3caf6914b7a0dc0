#pragma once

#include <vector>

#include "ldolc/rational.hpp"

namespace ldolc {

struct Breakpoint {
  Rational x;
  Rational value;
  bool operator==(const Breakpoint&) const = default;
};

/// Continuous piecewise-linear function on [0, b] given by its breakpoints.
/// Collinear interior breakpoints are merged on construction, so two
/// functions are equal iff their breakpoint lists are.
class PwlConcaveFn {
 public:
  /// Throws std::invalid_argument unless x strictly increases from 0 and
  /// there are at least two breakpoints. Concavity is checked separately.
  explicit PwlConcaveFn(std::vector<Breakpoint> points);

  static PwlConcaveFn linear(const Rational& b, const Rational& slope);
  static PwlConcaveFn zero(const Rational& b) { return linear(b, 0); }

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  const Rational& domain_end() const { return points_.back().x; }

  /// Throws std::out_of_range outside [0, b].
  Rational operator()(const Rational& x) const;

  /// Segment slopes are nonincreasing.
  bool is_concave() const;

  /// Smallest x attaining the maximum over [0, b]; for a concave function it
  /// is the first breakpoint whose right-hand slope is <= 0.
  Rational smallest_maximizer() const;

  bool operator==(const PwlConcaveFn&) const = default;

 private:
  std::vector<Breakpoint> points_;
};

/// M(u) = max_{y in [0, u]} f(y): f up to its smallest maximizer, constant
/// afterwards. Concave and nondecreasing for concave f.
PwlConcaveFn pwl_prefix_max(const PwlConcaveFn& f);

}  // namespace ldolc
