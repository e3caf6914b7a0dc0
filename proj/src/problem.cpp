#include "ldolc/problem.hpp"

#include <algorithm>
#include <variant>

#include "ldolc/errors.hpp"

namespace ldolc {

ValidationReport validate(const Problem& problem, ValidationMode mode) {
  ValidationReport report;
  if (problem.b <= 0) {
    report.violations.push_back({"b must be strictly positive, got " + to_string(problem.b), {}});
  }
  if (!problem.p.is_summable()) {
    report.violations.push_back({"p is not absolutely summable (tail ratio magnitude 1)", {}});
  }
  if (mode == ValidationMode::kStrict) {
    if (!problem.c.is_summable()) {
      report.violations.push_back({"c is not absolutely summable (tail ratio magnitude 1)", {}});
    }
    if (!problem.a.is_summable()) {
      report.violations.push_back({"a is not absolutely summable (tail ratio magnitude 1)", {}});
    }
  }
  if (auto t = first_violation(SequenceExpr(problem.c), SignCondition::kNonnegative)) {
    report.violations.push_back({"c_t < 0", *t});
  }
  SequenceExpr top;
  top.add(1, problem.c).add(problem.b, problem.a);
  if (auto t = first_violation(top, SignCondition::kNonnegative)) {
    report.violations.push_back({"c_t + a_t b < 0", *t});
  }
  return report;
}

Problem make_cake_eating(const Rational& b, const TailedSequence& p) {
  return Problem{b, p, TailedSequence::zero(), TailedSequence::constant(1)};
}

namespace {

// The single geometric term of a product of two tailed sequences from `from`.
GeoTerm product_term(const TailedSequence& x, const TailedSequence& y, std::size_t from) {
  GeoTerm gx = x.tail_term_from(from);
  GeoTerm gy = y.tail_term_from(from);
  return {gx.coef * gy.coef, gx.ratio * gy.ratio};
}

}  // namespace

Problem make_wealth_accumulation(const Rational& b, const TailedSequence& u,
                                 const TailedSequence& c, const TailedSequence& a) {
  std::vector<std::string> failures;
  if (b <= 0) failures.push_back("b must be strictly positive");
  if (auto t = first_violation(SequenceExpr(a), SignCondition::kNonnegative)) {
    failures.push_back("a_t < 0 at t=" + std::to_string(*t));
  }
  if (auto t = first_violation(SequenceExpr(u), SignCondition::kNonnegative)) {
    failures.push_back("u_t < 0 at t=" + std::to_string(*t));
  }
  const std::size_t uc_start = std::max(u.tail_start(), c.tail_start());
  const GeoTerm uc = product_term(u, c, uc_start);
  if (uc.coef != 0 && abs(uc.ratio) >= 1) {
    failures.push_back("sum of u_t c_t diverges");
  }

  // Past `start`, u_t a_t and u_{t-1} are both geometric; p has a single
  // geometric tail only if their ratios agree or one of them vanishes.
  const std::size_t start = std::max(u.tail_start() + 1, a.tail_start());
  const GeoTerm ua = product_term(u, a, start);
  const GeoTerm lag = u.tail_term_from(start - 1);
  std::vector<GeoTerm> parts;
  if (ua.coef != 0) parts.push_back(ua);
  if (lag.coef != 0) {
    GeoTerm shifted{-lag.coef, lag.ratio};
    if (!parts.empty() && parts.front().ratio == shifted.ratio) {
      parts.front().coef += shifted.coef;
    } else if (shifted.coef != 0) {
      parts.push_back(shifted);
    }
  }
  std::erase_if(parts, [](const GeoTerm& g) { return g.coef == 0; });
  if (parts.size() > 1) {
    failures.push_back("weights u_t a_t - u_{t-1} have two distinct geometric rates; "
                       "not representable as a zero or geometric tail");
  }
  if (!failures.empty()) throw PreconditionError(failures);

  std::vector<Rational> prefix(start);
  for (std::size_t t = 0; t < start; ++t) {
    prefix[t] = u.value_at(t) * a.value_at(t);
    if (t > 0) prefix[t] -= u.value_at(t - 1);
  }
  Tail tail = ZeroTail{};
  if (!parts.empty()) tail = GeometricTail{parts.front().coef, parts.front().ratio};
  return Problem{b, TailedSequence(std::move(prefix), tail), c, a};
}

Problem make_discounted_stationary(const Rational& b, const Rational& weight,
                                   const Rational& discount, const Rational& c,
                                   const Rational& a) {
  if (discount <= 0 || discount >= 1) {
    throw PreconditionError("discount factor must lie in (0, 1)");
  }
  return Problem{b, TailedSequence::geometric(weight, discount),
                 TailedSequence::constant(c), TailedSequence::constant(a)};
}

ProblemClass classify(const Problem& problem) {
  ProblemClass result;
  const TailedSequence& p = problem.p;
  const std::size_t tail = p.tail_start();

  // Nonzero, sign-alternating from t = 1: every product p_t p_{t+1} < 0.
  {
    const std::size_t head_end = std::max<std::size_t>(tail, 1);
    bool alternating = true;
    for (std::size_t t = 1; t < head_end && alternating; ++t) {
      alternating = p.value_at(t) * p.value_at(t + 1) < 0;
    }
    if (alternating) {
      const GeoTerm g = p.tail_term_from(head_end);
      alternating = g.coef != 0 && g.ratio < 0;
    }
    result.strictly_alternating = alternating;
  }

  // A tail with a violation past its first index violates infinitely often.
  auto last_witness = [&](SignCondition required) -> std::optional<std::size_t> {
    if (first_violation(SequenceExpr(p), required, tail + 1)) return std::nullopt;
    std::size_t witness = 0;
    for (std::size_t t = 0; t <= tail; ++t) {
      if (!satisfies(p.value_at(t), required)) witness = t + 1;
    }
    return witness;
  };
  result.eventually_conclusive = last_witness(SignCondition::kNonpositive);
  result.strongly_eventually_conclusive = last_witness(SignCondition::kNegative);

  if (result.strongly_eventually_conclusive && p.value_at(0) > 0) {
    const auto first_nonpositive = first_violation(SequenceExpr(p), SignCondition::kPositive);
    result.two_phase = TwoPhase{*first_nonpositive - 1, *result.strongly_eventually_conclusive};
  }

  SequenceExpr top;
  top.add(1, problem.c).add(problem.b, problem.a);
  result.positivity_margin =
      !first_violation(SequenceExpr(problem.c), SignCondition::kPositive) &&
      !first_violation(top, SignCondition::kPositive);
  return result;
}

}  // namespace ldolc
