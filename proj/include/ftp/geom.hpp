#pragma once

// Planar primitives for the circle Fermat-Torricelli problem: points,
// circles, point-to-circle projection and distance, and angles at an apex.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace ftp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Two points closer than this are treated as coincident.
inline constexpr double kCoincidenceEps = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2& operator+=(Point2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Point2& operator-=(Point2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  Point2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend bool operator==(Point2, Point2) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3D cross product; positive when b is counter-clockwise of a.
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }
// Counter-clockwise rotation by a right angle.
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }

// Unit vector along v. v must be non-zero; callers check degeneracy.
inline Point2 unit(Point2 v) { return (1.0 / norm(v)) * v; }

struct Circle {
  Point2 center;
  double radius = 0.0;
};

enum class DistanceMode {
  ToCurve,  // | |p - A| - r |
  ToSet,    // max(|p - A| - r, 0)
};

// A' = A + r * unit(p - A). Throws DegenerateProjection when p is the center.
Point2 project_onto_circle(Point2 p, const Circle& c);

double distance_to_circle(Point2 p, const Circle& c,
                          DistanceMode mode = DistanceMode::ToCurve);

// Unsigned angle in [0, pi] between rays apex->a and apex->b.
double angle_at(Point2 apex, Point2 a, Point2 b);

// Polar angle of apex->a in [0, 2pi).
double polar_angle(Point2 apex, Point2 a);

// Counter-clockwise angle in [0, 2pi) swept from direction `from` to `to`.
double ccw_angle(double from, double to);

// Indices of `targets` sorted counter-clockwise around apex, starting at the
// target with the smallest polar angle.
std::vector<std::size_t> cyclic_order(Point2 apex, std::span<const Point2> targets);

// Consecutive counter-clockwise sector angles between targets taken in
// `order`; the last entry closes the loop back to order.front(). Sums to 2pi.
std::vector<double> consecutive_sectors(Point2 apex, std::span<const Point2> targets,
                                        std::span<const std::size_t> order);

// Rate of change of the distance |p - c| - r as p moves along unit direction
// v, written as cos of the angle between -v and the segment p -> A'.
double first_variation_rate(const Circle& c, Point2 p, Point2 v);

}  // namespace ftp
