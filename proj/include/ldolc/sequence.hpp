#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ldolc/rational.hpp"

namespace ldolc {

struct ZeroTail {
  bool operator==(const ZeroTail&) const = default;
};

/// Value at index (tail_start + k) is first * ratio^k.
struct GeometricTail {
  Rational first;
  Rational ratio;
  bool operator==(const GeometricTail&) const = default;
};

using Tail = std::variant<ZeroTail, GeometricTail>;

/// One geometric term coef * ratio^k for k = 0, 1, 2, ...
struct GeoTerm {
  Rational coef;
  Rational ratio;
};

/// A real sequence indexed from 0: an explicit finite prefix followed by an
/// analytic tail. Geometric ratios are limited to |ratio| <= 1; the sequence
/// is absolutely summable iff the tail is zero or |ratio| < 1.
class TailedSequence {
 public:
  TailedSequence() = default;
  explicit TailedSequence(std::vector<Rational> prefix, Tail tail = ZeroTail{});

  static TailedSequence zero() { return TailedSequence(); }
  static TailedSequence constant(const Rational& value);
  static TailedSequence geometric(const Rational& first, const Rational& ratio,
                                  std::vector<Rational> prefix = {});

  const std::vector<Rational>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }
  std::size_t tail_start() const { return prefix_.size(); }

  Rational value_at(std::size_t t) const;

  /// True when every value from tail_start() on is zero.
  bool has_zero_tail() const;
  bool is_summable() const;

  /// Exact sum of |value_at(t)| over t >= from. Throws PreconditionError when
  /// the sequence is not summable.
  Rational abs_tail_sum(std::size_t from) const;

  /// The tail written as a single geometric term starting at index `from`;
  /// requires from >= tail_start().
  GeoTerm tail_term_from(std::size_t from) const;

  bool operator==(const TailedSequence&) const = default;

 private:
  std::vector<Rational> prefix_;
  Tail tail_ = ZeroTail{};
};

/// Finite linear combination sum_i weight_i * sequence_i, evaluated lazily.
class SequenceExpr {
 public:
  SequenceExpr() = default;
  SequenceExpr(const TailedSequence& s) { add(1, s); }  // NOLINT

  SequenceExpr& add(const Rational& weight, const TailedSequence& s);

  Rational value_at(std::size_t t) const;
  std::size_t tail_start() const;
  /// Geometric terms from index `from` (>= tail_start()), merged by ratio with
  /// zero coefficients dropped.
  std::vector<GeoTerm> tail_terms_from(std::size_t from) const;

 private:
  std::vector<std::pair<Rational, TailedSequence>> parts_;
};

enum class SignCondition { kNonnegative, kPositive, kNonpositive, kNegative };

enum class IndexFilter { kAll, kEven, kOdd };

bool satisfies(const Rational& value, SignCondition condition);

/// First index t >= from (restricted to the filter's parity) at which the
/// expression violates the sign condition, or nullopt if it holds for every
/// such t. Decided exactly: the prefix pointwise, the tail by dominance of
/// geometric terms. Supports tails with at most two distinct ratios.
std::optional<std::size_t> first_violation(const SequenceExpr& expr,
                                           SignCondition condition,
                                           std::size_t from = 0,
                                           IndexFilter filter = IndexFilter::kAll);

/// First k at which sum_i coef_i * ratio_i^k violates the condition.
std::optional<std::size_t> first_violation(const std::vector<GeoTerm>& terms,
                                           SignCondition condition);

}  // namespace ldolc
