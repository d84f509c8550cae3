#include <doctest.h>

#include <cmath>
#include <random>

#include "ftp/configuration.hpp"
#include "ftp/error.hpp"
#include "ftp/geom.hpp"
#include "ftp/oracle.hpp"

using namespace ftp;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ftp::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("projection onto a circle") {
  const Circle unit_circle{{0, 0}, 1};
  Point2 q = project_onto_circle({2, 0}, unit_circle);
  CHECK(q.x == doctest::Approx(1.0));
  CHECK(q.y == doctest::Approx(0.0));
  q = project_onto_circle({0, 3}, unit_circle);
  CHECK(q.x == doctest::Approx(0.0));
  CHECK(q.y == doctest::Approx(1.0));
  q = project_onto_circle({3, 4}, {{0, 0}, 2});
  CHECK(q.x == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(q.y == doctest::Approx(1.6).epsilon(1e-14));

  CHECK(code_of([&] { project_onto_circle({0, 0}, unit_circle); }) ==
        ErrorCode::DegenerateProjection);
  CHECK(code_of([&] { project_onto_circle({1e-13, 0}, unit_circle); }) ==
        ErrorCode::DegenerateProjection);
}

TEST_CASE("distance to a circle in both modes") {
  const Circle unit_circle{{0, 0}, 1};
  CHECK(distance_to_circle({2, 0}, unit_circle, DistanceMode::ToCurve) == doctest::Approx(1.0));
  CHECK(distance_to_circle({0.5, 0}, unit_circle, DistanceMode::ToCurve) ==
        doctest::Approx(0.5));
  CHECK(distance_to_circle({0.5, 0}, unit_circle, DistanceMode::ToSet) == 0.0);
  const Circle c{{0, 0}, 2};
  CHECK(distance_to_circle({3, 4}, c, DistanceMode::ToCurve) == doctest::Approx(3.0));
  CHECK(distance_to_circle({3, 4}, c, DistanceMode::ToSet) == doctest::Approx(3.0));
}

TEST_CASE("angle at an apex") {
  CHECK(angle_at({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(angle_at({0, 0}, {1, 0}, {-1, 0}) == doctest::Approx(kPi));
  CHECK(angle_at({0, 0}, {1, 0}, {1, 1}) == doctest::Approx(kPi / 4));
  // Nearly parallel rays would push the dot product past 1 without clamping.
  CHECK(angle_at({0, 0}, {1, 0}, {1e8, 1e-9}) >= 0.0);
  CHECK(code_of([] { angle_at({0, 0}, {0, 0}, {1, 0}); }) == ErrorCode::DegenerateAngle);
  CHECK(code_of([] { angle_at({0, 0}, {1, 0}, {0, 5e-13}); }) == ErrorCode::DegenerateAngle);
}

TEST_CASE("configuration validation") {
  const std::vector<Circle> ok{{{0, 0}, 0.1}, {{1, 0}, 0.1}, {{0, 1}, 0.1}};
  CHECK_NOTHROW(make_configuration(ok, {1, 1, 1}));
  CHECK(code_of([&] { make_configuration({ok[0], ok[1]}, {1, 1}); }) ==
        ErrorCode::InvalidConfiguration);
  CHECK(code_of([&] { make_configuration(ok, {1, 1}); }) == ErrorCode::InvalidConfiguration);
  CHECK(code_of([&] { make_configuration(ok, {1, 0, 1}); }) == ErrorCode::InvalidConfiguration);
  CHECK(code_of([&] { make_configuration(ok, {1, 1, -1}); }) == ErrorCode::InvalidConfiguration);
  CHECK(code_of([&] {
          make_configuration({{{0, 0}, 0.6}, {{1, 0}, 0.5}, {{0, 3}, 0.1}}, {1, 1, 1});
        }) == ErrorCode::InvalidConfiguration);
  CHECK(code_of([&] {
          make_configuration({{{0, 0}, 0.0}, {{1, 0}, 0.1}, {{0, 1}, 0.1}}, {1, 1, 1});
        }) == ErrorCode::InvalidConfiguration);
  CHECK(code_of([&] { make_configuration(ok, {1, 1, 1}, 0.0); }) ==
        ErrorCode::InvalidConfiguration);
}

TEST_CASE("property: projection distance equals curve distance outside the disk") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  std::uniform_real_distribution<double> r(0.1, 2);
  int checked = 0;
  for (int k = 0; k < 2000; ++k) {
    const Circle c{{u(rng), u(rng)}, r(rng)};
    const Point2 p{u(rng), u(rng)};
    if (distance(p, c.center) <= c.radius) continue;
    ++checked;
    const double d = distance(p, project_onto_circle(p, c));
    CHECK(std::abs(d - distance_to_circle(p, c, DistanceMode::ToCurve)) <= 1e-12);
    // The segment to the projection is radial.
    CHECK(std::abs(cross(p - c.center, project_onto_circle(p, c) - c.center)) <= 1e-9);
  }
  CHECK(checked > 1000);
}

TEST_CASE("property: angle_at is symmetric and sectors close to 2pi") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 1000; ++k) {
    const Point2 apex{u(rng), u(rng)};
    const Point2 a{u(rng), u(rng)};
    const Point2 b{u(rng), u(rng)};
    const Point2 c{u(rng), u(rng)};
    CHECK(angle_at(apex, a, b) == angle_at(apex, b, a));
    const std::vector<Point2> pts{a, b, c};
    const auto order = cyclic_order(apex, pts);
    const auto sectors = consecutive_sectors(apex, pts, order);
    CHECK(std::abs(sectors[0] + sectors[1] + sectors[2] - kTwoPi) <= 1e-10);
  }
}

TEST_CASE("cyclic order sorts by polar angle") {
  const std::vector<Point2> pts{{0, 1}, {1, 0}, {-1, -1}, {-1, 0.1}};
  const auto order = cyclic_order({0, 0}, pts);
  CHECK(order == std::vector<std::size_t>{1, 0, 3, 2});
  const auto s = consecutive_sectors({0, 0}, pts, order);
  CHECK(s[0] == doctest::Approx(kPi / 2));
}

TEST_CASE("first variation: derivative of the distance along v") {
  const Circle c{{0, 0}, 1};
  // Outward radial direction: cos 0.
  CHECK(first_variation_rate(c, {3, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(finite_difference_directional(c, {3, 0}, {1, 0}, 1e-6) == doctest::Approx(1.0));
  // Perpendicular to the segment: cos(pi/2).
  CHECK(std::abs(first_variation_rate(c, {3, 0}, {0, 1})) <= 1e-15);
  CHECK(std::abs(finite_difference_directional(c, {3, 0}, {0, 1}, 1e-6)) <= 1e-6);
  // Inside the disk the same identity holds for the curve distance.
  const Point2 p{0.3, 0.2};
  const Point2 v{0.6, -0.8};
  CHECK(finite_difference_directional(c, p, v, 1e-6) ==
        doctest::Approx(first_variation_rate(c, p, v)).epsilon(1e-7));
}
