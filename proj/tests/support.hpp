#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "ldolc/analytic_rules.hpp"
#include "ldolc/problem.hpp"
#include "ldolc/rational.hpp"
#include "ldolc/trajectory.hpp"

namespace ldolc::testing {

inline Rational q(const std::string& text) { return parse_rational(text); }

inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::vector<Rational> qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* s : items) out.push_back(parse_rational(s));
  return out;
}

inline TailedSequence seq(std::initializer_list<const char*> prefix) {
  return TailedSequence(qs(prefix));
}

inline TailedSequence seq(std::initializer_list<const char*> prefix, const char* first,
                          const char* ratio) {
  return TailedSequence(qs(prefix), GeometricTail{q(first), q(ratio)});
}

inline Trajectory traj(std::initializer_list<const char*> head, std::size_t start = 0) {
  return Trajectory(start, qs(head));
}

inline Problem make_problem(const char* b, TailedSequence p, TailedSequence c, TailedSequence a) {
  return Problem{q(b), std::move(p), std::move(c), std::move(a)};
}

// b = 1, p = [1/2, 1/4] then -1/8 * (1/2)^k, c_t = 3/10 * 2^-t, a_t = 1/2 * 2^-t.
inline Problem two_phase_reference() {
  return make_problem("1", seq({"1/2", "1/4"}, "-1/8", "1/2"), seq({}, "3/10", "1/2"),
                      seq({}, "1/2", "1/2"));
}

// b = 1, c_t = 2^-(t+1), a_t = -2^-(t+2), p_t = (-1/2)^t.
inline Problem alternating_reference() {
  return make_problem("1", seq({"1"}, "-1/2", "-1/2"), seq({}, "1/2", "1/2"),
                      seq({}, "-1/4", "1/2"));
}

inline Problem cake_eating_four() {
  return make_cake_eating(1, seq({"1", "1/2", "1/4", "1/8"}));
}

class Rng {
 public:
  explicit Rng(std::uint32_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  Rational frac(long lo, long hi, long den) {
    return ratio(integer(lo, hi), den);
  }
  Rational nonzero(long lo, long hi, long den) {
    long v = 0;
    while (v == 0) v = integer(lo, hi);
    return ratio(v, den);
  }
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(integer(0, static_cast<long>(items.size()) - 1))];
  }
  std::mt19937& engine() { return engine_; }

 private:
  std::mt19937 engine_;
};

inline Rational random_bound(Rng& rng) { return rng.pick(qs({"1", "2", "1/2", "3/2"})); }

inline Rational random_ratio(Rng& rng) { return rng.pick(qs({"1/4", "1/2", "3/4", "1/3"})); }

// c >= 0 and c + a b >= 0 on a prefix of length n, then either zero tails or
// a geometric c tail with an a tail of the same ratio.
inline void random_constraints(Rng& rng, const Rational& b, std::size_t n, TailedSequence& c,
                               TailedSequence& a, bool allow_negative_a = true) {
  std::vector<Rational> cs;
  std::vector<Rational> as;
  for (std::size_t t = 0; t < n; ++t) {
    Rational ct = rng.coin(0.2) ? Rational(0) : rng.frac(1, 8, 8) * b;
    Rational at = rng.frac(allow_negative_a ? -8 : 0, 12, 8);
    if (ct + at * b < 0) at = -ct / b;
    cs.push_back(ct);
    as.push_back(at);
  }
  if (rng.coin()) {
    c = TailedSequence(cs);
    a = TailedSequence(as);
    return;
  }
  const Rational r = random_ratio(rng);
  const Rational cf = rng.frac(1, 8, 8) * b;
  Rational af = rng.frac(allow_negative_a ? -8 : 0, 8, 8);
  if (cf + af * b < 0) af = -cf / b;
  c = TailedSequence(cs, GeometricTail{cf, r});
  a = TailedSequence(as, GeometricTail{af, r});
}

inline Rational random_start(Rng& rng, const Rational& b) { return rng.frac(0, 10, 10) * b; }

struct Instance {
  Problem problem;
  Rational x0;
};

// p_t <= 0 for every t past a prefix of length <= 6.
inline Instance random_eventually_conclusive(Rng& rng) {
  const Rational b = random_bound(rng);
  const auto n = static_cast<std::size_t>(rng.integer(1, 6));
  std::vector<Rational> ps;
  for (std::size_t t = 0; t < n; ++t) ps.push_back(rng.frac(-4, 4, 4));
  TailedSequence p(ps);
  if (rng.coin()) p = TailedSequence(ps, GeometricTail{rng.frac(-8, 0, 8), random_ratio(rng)});
  Problem problem{b, p, {}, {}};
  random_constraints(rng, b, n + static_cast<std::size_t>(rng.integer(0, 2)), problem.c,
                     problem.a);
  return {problem, random_start(rng, b)};
}

// p_0 > 0 and p_t < 0 from some T in [1, n] on, with a negative geometric tail.
inline Instance random_strongly_conclusive(Rng& rng) {
  const Rational b = random_bound(rng);
  const auto n = static_cast<std::size_t>(rng.integer(2, 6));
  const auto negative_from = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n)));
  std::vector<Rational> ps{rng.frac(1, 4, 4)};
  for (std::size_t t = 1; t < n; ++t) {
    ps.push_back(t >= negative_from ? rng.frac(-4, -1, 4) : rng.frac(-4, 4, 4));
  }
  Problem problem{b, TailedSequence(ps, GeometricTail{rng.frac(-8, -1, 8), random_ratio(rng)}),
                  {}, {}};
  random_constraints(rng, b, n, problem.c, problem.a);
  return {problem, random_start(rng, b)};
}

// Positive weights through T+, arbitrary weights in a gap of up to two
// periods, negative weights from T- on; a_t >= 0 before the gap ends.
inline Instance random_two_phase(Rng& rng) {
  const Rational b = random_bound(rng);
  const auto t_plus = static_cast<std::size_t>(rng.integer(0, 3));
  const auto gap = static_cast<std::size_t>(rng.integer(0, 2));
  const std::size_t t_minus = t_plus + 1 + gap;
  const std::size_t n = t_minus + static_cast<std::size_t>(rng.integer(0, 2));
  std::vector<Rational> ps;
  for (std::size_t t = 0; t < n; ++t) {
    if (t <= t_plus) {
      ps.push_back(rng.frac(1, 4, 4));
    } else if (t < t_minus) {
      ps.push_back(rng.frac(-4, 4, 4));
    } else {
      ps.push_back(rng.frac(-4, -1, 4));
    }
  }
  Problem problem{b, TailedSequence(ps, GeometricTail{rng.frac(-8, -1, 8), random_ratio(rng)}),
                  {}, {}};
  TailedSequence c_head;
  TailedSequence a_head;
  random_constraints(rng, b, t_minus, c_head, a_head, false);
  TailedSequence c_rest;
  TailedSequence a_rest;
  random_constraints(rng, b, n + 2, c_rest, a_rest, true);
  std::vector<Rational> cs(c_rest.prefix());
  std::vector<Rational> as(a_rest.prefix());
  for (std::size_t t = 0; t < t_minus; ++t) {
    cs[t] = c_head.prefix()[t];
    as[t] = a_head.prefix()[t];
  }
  problem.c = TailedSequence(cs, c_rest.tail());
  problem.a = TailedSequence(as, a_rest.tail());
  return {problem, random_start(rng, b)};
}

// Geometric c > 0 and a < 0 with min{c_t, c_t + a_t b} > 0, and weights
// p_t = s (-r)^(t-1) sign-flipped per case from t = 1 on.
inline Instance random_alternating(Rng& rng, AlternatingCase which) {
  const Rational b = random_bound(rng);
  const Rational rc = random_ratio(rng);
  const Rational ra = rng.coin() ? rc : rc * rng.pick(qs({"1/2", "1/3", "2/3"}));
  const Rational c0 = rng.frac(1, 8, 8);
  const Rational a0 = rng.frac(1, 7, 8) * c0 / b;
  const Rational s = rng.frac(1, 8, 8);
  const Rational r = random_ratio(rng);
  const Rational first = which == AlternatingCase::kPositiveFirst ? s : Rational(-s);
  Problem problem{b, TailedSequence({rng.frac(-4, 4, 4)}, GeometricTail{first, -r}),
                  TailedSequence({}, GeometricTail{c0, rc}),
                  TailedSequence({}, GeometricTail{-a0, ra})};
  return {problem, random_start(rng, b)};
}

// Any valid problem with a random zero- or geometric-tailed p.
inline Instance random_valid(Rng& rng, bool nonpositive_a = false, bool nonnegative_a = false) {
  const Rational b = random_bound(rng);
  const auto n = static_cast<std::size_t>(rng.integer(1, 6));
  std::vector<Rational> ps;
  for (std::size_t t = 0; t < n; ++t) ps.push_back(rng.frac(-4, 4, 4));
  Problem problem{b, TailedSequence(ps), {}, {}};
  random_constraints(rng, b, n + 2, problem.c, problem.a, !nonnegative_a);
  if (nonpositive_a) {
    std::vector<Rational> as;
    std::vector<Rational> cs(problem.c.prefix());
    for (std::size_t t = 0; t < cs.size(); ++t) {
      as.push_back(-rng.frac(0, 8, 8) * cs[t] / b);
    }
    problem.c = TailedSequence(cs);
    problem.a = TailedSequence(as);
  }
  return {problem, random_start(rng, b)};
}

// Uniform rational step inside each transition set for `length` periods.
inline Trajectory random_feasible(Rng& rng, const Problem& problem, const Rational& x0,
                                  std::size_t length, std::size_t start = 0) {
  std::vector<Rational> head{x0};
  for (std::size_t t = start; t + 1 < start + length; ++t) {
    const Rational hi = transition_set(problem, head.back(), t).hi;
    head.push_back(rng.coin(0.2) ? hi : hi * rng.frac(0, 12, 12));
  }
  return Trajectory(start, head);
}

}  // namespace ldolc::testing
