#include "ldolc/pwl.hpp"

#include <algorithm>
#include <stdexcept>

namespace ldolc {

namespace {

Rational slope(const Breakpoint& left, const Breakpoint& right) {
  return (right.value - left.value) / (right.x - left.x);
}

}  // namespace

PwlConcaveFn::PwlConcaveFn(std::vector<Breakpoint> points) {
  if (points.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  for (auto& bp : points) {
    bp.x.canonicalize();
    bp.value.canonicalize();
  }
  if (points.front().x != 0) throw std::invalid_argument("domain must start at 0");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].x < points[i].x)) {
      throw std::invalid_argument("breakpoint abscissae must strictly increase");
    }
  }
  points_.reserve(points.size());
  for (auto& point : points) {
    while (points_.size() >= 2 &&
           slope(points_[points_.size() - 2], points_.back()) == slope(points_.back(), point)) {
      points_.pop_back();
    }
    points_.push_back(std::move(point));
  }
}

PwlConcaveFn PwlConcaveFn::linear(const Rational& b, const Rational& slope_value) {
  return PwlConcaveFn({{0, 0}, {b, slope_value * b}});
}

Rational PwlConcaveFn::operator()(const Rational& x) const {
  if (x < 0 || x > domain_end()) {
    throw std::out_of_range("evaluation point " + to_string(x) + " outside domain");
  }
  auto right = std::lower_bound(points_.begin(), points_.end(), x,
                                [](const Breakpoint& p, const Rational& v) { return p.x < v; });
  if (right->x == x) return right->value;
  const Breakpoint& left = *(right - 1);
  return left.value + slope(left, *right) * (x - left.x);
}

bool PwlConcaveFn::is_concave() const {
  for (std::size_t i = 2; i < points_.size(); ++i) {
    if (slope(points_[i - 1], points_[i]) > slope(points_[i - 2], points_[i - 1])) return false;
  }
  return true;
}

Rational PwlConcaveFn::smallest_maximizer() const {
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (slope(points_[i], points_[i + 1]) <= 0) return points_[i].x;
  }
  return points_.back().x;
}

PwlConcaveFn pwl_prefix_max(const PwlConcaveFn& f) {
  const Rational peak = f.smallest_maximizer();
  std::vector<Breakpoint> points;
  for (const auto& point : f.breakpoints()) {
    if (point.x > peak) break;
    points.push_back(point);
  }
  if (peak < f.domain_end()) points.push_back({f.domain_end(), points.back().value});
  return PwlConcaveFn(std::move(points));
}

}  // namespace ldolc
