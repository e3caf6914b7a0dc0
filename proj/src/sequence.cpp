#include "ldolc/sequence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ldolc/errors.hpp"

namespace ldolc {

TailedSequence::TailedSequence(std::vector<Rational> prefix, Tail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (auto& v : prefix_) v.canonicalize();
  if (auto* g = std::get_if<GeometricTail>(&tail_)) {
    g->first.canonicalize();
    g->ratio.canonicalize();
    if (abs(g->ratio) > 1) {
      throw std::invalid_argument("geometric tail ratio " + to_string(g->ratio) +
                                  " has magnitude above 1");
    }
  }
}

TailedSequence TailedSequence::constant(const Rational& value) {
  return TailedSequence({}, GeometricTail{value, 1});
}

TailedSequence TailedSequence::geometric(const Rational& first, const Rational& ratio,
                                         std::vector<Rational> prefix) {
  return TailedSequence(std::move(prefix), GeometricTail{first, ratio});
}

Rational TailedSequence::value_at(std::size_t t) const {
  if (t < prefix_.size()) return prefix_[t];
  if (const auto* g = std::get_if<GeometricTail>(&tail_)) {
    return g->first * pow(g->ratio, t - prefix_.size());
  }
  return 0;
}

bool TailedSequence::has_zero_tail() const {
  const auto* g = std::get_if<GeometricTail>(&tail_);
  return g == nullptr || g->first == 0;
}

bool TailedSequence::is_summable() const {
  const auto* g = std::get_if<GeometricTail>(&tail_);
  return g == nullptr || g->first == 0 || abs(g->ratio) < 1;
}

Rational TailedSequence::abs_tail_sum(std::size_t from) const {
  if (!is_summable()) {
    throw PreconditionError("sequence with tail ratio of magnitude 1 is not summable");
  }
  Rational sum = 0;
  for (std::size_t t = from; t < prefix_.size(); ++t) sum += abs(prefix_[t]);
  if (const auto* g = std::get_if<GeometricTail>(&tail_)) {
    if (g->first != 0) {
      const std::size_t k = from > prefix_.size() ? from - prefix_.size() : 0;
      const Rational r = abs(g->ratio);
      sum += abs(g->first) * pow(r, k) / (1 - r);
    }
  }
  return sum;
}

GeoTerm TailedSequence::tail_term_from(std::size_t from) const {
  if (from < prefix_.size()) {
    throw std::logic_error("tail_term_from called inside the prefix");
  }
  if (const auto* g = std::get_if<GeometricTail>(&tail_)) {
    return {g->first * pow(g->ratio, from - prefix_.size()), g->ratio};
  }
  return {0, 0};
}

SequenceExpr& SequenceExpr::add(const Rational& weight, const TailedSequence& s) {
  parts_.emplace_back(weight, s);
  return *this;
}

Rational SequenceExpr::value_at(std::size_t t) const {
  Rational v = 0;
  for (const auto& [w, s] : parts_) v += w * s.value_at(t);
  return v;
}

std::size_t SequenceExpr::tail_start() const {
  std::size_t start = 0;
  for (const auto& part : parts_) start = std::max(start, part.second.tail_start());
  return start;
}

std::vector<GeoTerm> SequenceExpr::tail_terms_from(std::size_t from) const {
  std::vector<GeoTerm> terms;
  for (const auto& [w, s] : parts_) {
    GeoTerm term = s.tail_term_from(from);
    term.coef *= w;
    if (term.coef == 0) continue;
    auto same = std::find_if(terms.begin(), terms.end(),
                             [&](const GeoTerm& g) { return g.ratio == term.ratio; });
    if (same != terms.end()) {
      same->coef += term.coef;
    } else {
      terms.push_back(term);
    }
  }
  std::erase_if(terms, [](const GeoTerm& g) { return g.coef == 0; });
  return terms;
}

bool satisfies(const Rational& value, SignCondition condition) {
  switch (condition) {
    case SignCondition::kNonnegative: return value >= 0;
    case SignCondition::kPositive: return value > 0;
    case SignCondition::kNonpositive: return value <= 0;
    case SignCondition::kNegative: return value < 0;
  }
  return false;
}

namespace {

Rational geo_value(const std::vector<GeoTerm>& terms, std::size_t k) {
  Rational v = 0;
  for (const auto& g : terms) v += g.coef * pow(g.ratio, k);
  return v;
}

std::optional<std::size_t> first_failing(const std::vector<GeoTerm>& terms,
                                         SignCondition condition, std::size_t upto) {
  for (std::size_t k = 0; k <= upto; ++k) {
    if (!satisfies(geo_value(terms, k), condition)) return k;
  }
  return std::nullopt;
}

constexpr std::size_t kDominanceSearchLimit = 1'000'000;

}  // namespace

std::optional<std::size_t> first_violation(const std::vector<GeoTerm>& input,
                                           SignCondition condition) {
  std::vector<GeoTerm> terms;
  for (const auto& g : input) {
    if (g.coef == 0) continue;
    auto same = std::find_if(terms.begin(), terms.end(),
                             [&](const GeoTerm& h) { return h.ratio == g.ratio; });
    if (same != terms.end()) {
      same->coef += g.coef;
    } else {
      terms.push_back(g);
    }
  }
  std::erase_if(terms, [](const GeoTerm& g) { return g.coef == 0; });

  // A single term has a sign pattern of period at most 2 from k = 1 on
  // (ratio 0 gives zeros there), so k = 0..2 decides every k.
  if (terms.size() <= 1) return first_failing(terms, condition, 2);
  if (terms.size() > 2) {
    throw std::invalid_argument("sign analysis supports at most two geometric rates");
  }

  if (abs(terms[1].ratio) > abs(terms[0].ratio)) std::swap(terms[0], terms[1]);
  const GeoTerm& dominant = terms[0];
  const GeoTerm& minor = terms[1];

  // Equal magnitudes with distinct ratios means ratio' = -ratio: the sign
  // pattern repeats with period 2 (ratio^k contributes a fixed sign pattern).
  if (abs(dominant.ratio) == abs(minor.ratio)) return first_failing(terms, condition, 3);

  // Past the first K with |minor| * q^K < |dominant|, q = |r_minor|/|r_dom|,
  // the dominant term fixes the sign, whose pattern has period 2.
  const Rational q = abs(minor.ratio) / abs(dominant.ratio);
  const Rational lhs_scale = abs(minor.coef);
  const Rational target = abs(dominant.coef);
  Rational lhs = lhs_scale;
  std::size_t crossover = 0;
  while (!(lhs < target)) {
    lhs *= q;
    if (++crossover > kDominanceSearchLimit) {
      throw std::runtime_error("sign analysis: dominance crossover not found");
    }
  }
  return first_failing(terms, condition, crossover + 1);
}

std::optional<std::size_t> first_violation(const SequenceExpr& expr,
                                           SignCondition condition, std::size_t from,
                                           IndexFilter filter) {
  auto matches = [filter](std::size_t t) {
    switch (filter) {
      case IndexFilter::kAll: return true;
      case IndexFilter::kEven: return t % 2 == 0;
      case IndexFilter::kOdd: return t % 2 == 1;
    }
    return true;
  };
  const std::size_t start = std::max(expr.tail_start(), from);
  for (std::size_t t = from; t < start; ++t) {
    if (matches(t) && !satisfies(expr.value_at(t), condition)) return t;
  }
  std::size_t first = start;
  while (!matches(first)) ++first;
  const std::size_t stride = filter == IndexFilter::kAll ? 1 : 2;
  std::vector<GeoTerm> terms = expr.tail_terms_from(first);
  if (stride == 2) {
    for (auto& g : terms) g.ratio *= g.ratio;
  }
  if (auto k = first_violation(terms, condition)) return first + stride * *k;
  return std::nullopt;
}

}  // namespace ldolc
