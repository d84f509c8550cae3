#include "ftp/geom.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "ftp/error.hpp"

namespace ftp {

Point2 project_onto_circle(Point2 p, const Circle& c) {
  const Point2 d = p - c.center;
  const double len = norm(d);
  if (len <= kCoincidenceEps) {
    throw Error(ErrorCode::DegenerateProjection,
                fmt::format("point ({}, {}) coincides with circle center", p.x, p.y));
  }
  return c.center + (c.radius / len) * d;
}

double distance_to_circle(Point2 p, const Circle& c, DistanceMode mode) {
  const double gap = distance(p, c.center) - c.radius;
  if (mode == DistanceMode::ToSet) return std::max(gap, 0.0);
  return std::abs(gap);
}

double angle_at(Point2 apex, Point2 a, Point2 b) {
  const Point2 da = a - apex;
  const Point2 db = b - apex;
  const double la = norm(da);
  const double lb = norm(db);
  if (la <= kCoincidenceEps || lb <= kCoincidenceEps) {
    throw Error(ErrorCode::DegenerateAngle, "ray endpoint coincides with apex");
  }
  const double c = std::clamp(dot(da, db) / (la * lb), -1.0, 1.0);
  return std::acos(c);
}

double polar_angle(Point2 apex, Point2 a) {
  const Point2 d = a - apex;
  double t = std::atan2(d.y, d.x);
  if (t < 0.0) t += kTwoPi;
  // atan2 can return exactly -0.0 or a value that rounds to 2pi after the shift.
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

double ccw_angle(double from, double to) {
  double d = std::fmod(to - from, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d;
}

std::vector<std::size_t> cyclic_order(Point2 apex, std::span<const Point2> targets) {
  std::vector<double> theta(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (distance(targets[i], apex) <= kCoincidenceEps) {
      throw Error(ErrorCode::DegenerateAngle, "ray endpoint coincides with apex");
    }
    theta[i] = polar_angle(apex, targets[i]);
  }
  std::vector<std::size_t> order(targets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });
  return order;
}

std::vector<double> consecutive_sectors(Point2 apex, std::span<const Point2> targets,
                                        std::span<const std::size_t> order) {
  std::vector<double> sectors(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double from = polar_angle(apex, targets[order[k]]);
    const double to = polar_angle(apex, targets[order[(k + 1) % order.size()]]);
    sectors[k] = ccw_angle(from, to);
  }
  // A single target sweeps the full turn.
  if (order.size() == 1) sectors[0] = kTwoPi;
  return sectors;
}

double first_variation_rate(const Circle& c, Point2 p, Point2 v) {
  const Point2 foot = project_onto_circle(p, c);
  const Point2 to_foot = foot - p;
  const double len = norm(to_foot);
  if (len <= kCoincidenceEps) {
    throw Error(ErrorCode::DegenerateAngle, "point lies on the circle");
  }
  // Holds on both sides of the curve: A' is the nearest curve point either way.
  return dot(-1.0 * unit(v), (1.0 / len) * to_foot);
}

}  // namespace ftp
