#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ldolc/rational.hpp"
#include "ldolc/sequence.hpp"

namespace ldolc {

/// Per-period data of a problem instance.
struct Coefficients {
  Rational p;  ///< objective weight
  Rational c;  ///< transition intercept
  Rational a;  ///< transition slope
};

/// Maximize sum_t p_t x_t over x_{t+1} in [0, min{c_t + a_t x_t, b}], x_0 given.
struct Problem {
  Rational b;
  TailedSequence p;
  TailedSequence c;
  TailedSequence a;

  Coefficients at(std::size_t t) const { return {p.value_at(t), c.value_at(t), a.value_at(t)}; }

  /// Upper end of the transition set from x at period t, before clamping to 0.
  Rational reach(std::size_t t, const Rational& x) const {
    return c.value_at(t) + a.value_at(t) * x;
  }

  bool operator==(const Problem&) const = default;
};

/// Strict mode requires every sequence to be summable. Relaxed mode waives
/// summability of c and a (never of p), which admits cake eating.
enum class ValidationMode { kStrict, kRelaxed };

struct Violation {
  std::string what;
  std::optional<std::size_t> index;  ///< first offending period, when one exists
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Problem& problem,
                          ValidationMode mode = ValidationMode::kStrict);

/// a_t = 1, c_t = 0 for all t. Fails strict validation (a is not summable).
Problem make_cake_eating(const Rational& b, const TailedSequence& p);

/// p_0 = u_0 a_0, p_t = u_t a_t - u_{t-1}. Throws PreconditionError when
/// u or a has a negative entry, when sum u_t c_t diverges, or when the
/// resulting weights have no zero/geometric tail.
Problem make_wealth_accumulation(const Rational& b, const TailedSequence& u,
                                 const TailedSequence& c, const TailedSequence& a);

/// p_t = weight * discount^t with constant c and a.
Problem make_discounted_stationary(const Rational& b, const Rational& weight,
                                   const Rational& discount, const Rational& c,
                                   const Rational& a);

struct TwoPhase {
  std::size_t t_plus;   ///< last period of the leading run of positive weights
  std::size_t t_minus;  ///< first period of the trailing run of negative weights
  bool operator==(const TwoPhase&) const = default;
};

struct ProblemClass {
  bool strictly_alternating = false;
  std::optional<std::size_t> eventually_conclusive;           ///< least T: p_t <= 0 for t >= T
  std::optional<std::size_t> strongly_eventually_conclusive;  ///< least T: p_t < 0 for t >= T
  std::optional<TwoPhase> two_phase;
  bool positivity_margin = false;  ///< min{c_t, c_t + a_t b} > 0 for all t
};

ProblemClass classify(const Problem& problem);

}  // namespace ldolc
