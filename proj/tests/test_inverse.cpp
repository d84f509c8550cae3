#include <doctest.h>

#include <cmath>
#include <random>

#include "ftp/error.hpp"
#include "ftp/inverse.hpp"
#include "ftp/random_scene.hpp"
#include "ftp/solver.hpp"
#include "support.hpp"

using namespace ftp;

TEST_CASE("angles from weights") {
  AngleTriple a = angles_from_weights(1, 1, 1);
  for (double phi : a.phi) CHECK(phi == doctest::Approx(kTwoPi / 3).epsilon(1e-15));

  a = angles_from_weights(3, 4, 5);
  CHECK(a.phi[0] == doctest::Approx(std::acos(-0.8)).epsilon(1e-15));
  CHECK(a.phi[1] == doctest::Approx(std::acos(-0.6)).epsilon(1e-15));
  CHECK(a.phi[2] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(a.phi[0] == doctest::Approx(2.4981).epsilon(1e-4));
  CHECK(a.phi[1] == doctest::Approx(2.2143).epsilon(1e-4));
  CHECK(std::abs(a.sum() - kTwoPi) <= 1e-12);

  for (auto w : {std::array<double, 3>{1, 1, 2}, {5, 1, 1}, {1, 3, 1}}) {
    try {
      angles_from_weights(w[0], w[1], w[2]);
      FAIL("expected AbsorbedWeights");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AbsorbedWeights);
    }
  }
}

TEST_CASE("weights from angles") {
  std::array<double, 3> w = weights_from_angles({{kTwoPi / 3, kTwoPi / 3, kTwoPi / 3}});
  for (double x : w) CHECK(x == doctest::Approx(1.0 / 3).epsilon(1e-15));

  w = weights_from_angles(angles_from_weights(3, 4, 5));
  CHECK(w[0] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(w[1] == doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK(w[2] == doctest::Approx(5.0 / 12).epsilon(1e-13));

  w = weights_from_angles({{kPi / 2, 3 * kPi / 4, 3 * kPi / 4}});
  const double s2 = std::sqrt(2.0);
  CHECK(w[0] == doctest::Approx(1 / (1 + s2)).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(s2 / (2 + 2 * s2)).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(s2 / (2 + 2 * s2)).epsilon(1e-14));
  CHECK(w[0] + w[1] + w[2] == 1.0);
}

TEST_CASE("invalid angle triples") {
  auto code = [](AngleTriple a) {
    try {
      weights_from_angles(a);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code({{kPi, kPi / 2, kPi / 2}}) == ErrorCode::DegenerateAngles);
  CHECK(code({{2.0, 2.0, 2.0}}) == ErrorCode::DegenerateAngles);
  CHECK(code({{0.0, kPi, kPi}}) == ErrorCode::DegenerateAngles);
}

TEST_CASE("literal inverse formula agrees with the sine-proportional form") {
  // w_Q = (1 + sin phi_R / sin phi_Q + sin phi_S / sin phi_Q)^-1
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int k = 0; k < 500; ++k) {
    const double w1 = u(rng), w2 = u(rng), w3 = u(rng);
    if (w1 >= w2 + w3 || w2 >= w1 + w3 || w3 >= w1 + w2) continue;
    const AngleTriple a = angles_from_weights(w1, w2, w3);
    const auto w = weights_from_angles(a);
    for (int q = 0; q < 3; ++q) {
      const double sq = std::sin(a.phi[q]);
      const double lit =
          1.0 / (1.0 + std::sin(a.phi[(q + 1) % 3]) / sq + std::sin(a.phi[(q + 2) % 3]) / sq);
      CHECK(std::abs(lit - w[q]) <= 1e-12);
    }
  }
}

TEST_CASE("property: round trip, scale invariance and exact sum") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::uniform_real_distribution<double> lam(0.01, 100.0);
  int used = 0;
  for (int k = 0; k < 3000; ++k) {
    const double w1 = u(rng), w2 = u(rng), w3 = u(rng);
    if (w1 >= w2 + w3 || w2 >= w1 + w3 || w3 >= w1 + w2) continue;
    // Very flat triples have sines near 1e-12; keep to well-posed ones.
    const AngleTriple a = angles_from_weights(w1, w2, w3);
    if (std::min({std::sin(a.phi[0]), std::sin(a.phi[1]), std::sin(a.phi[2])}) < 1e-3) continue;
    ++used;
    const auto w = weights_from_angles(a);
    const auto expect = test::normalized({w1, w2, w3});
    for (int i = 0; i < 3; ++i) CHECK(std::abs(w[i] - expect[i]) <= 1e-10);
    CHECK(w[0] + w[1] + w[2] == 1.0);

    const double l = lam(rng);
    const AngleTriple b = angles_from_weights(l * w1, l * w2, l * w3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a.phi[i] - b.phi[i]) <= 1e-12);
  }
  CHECK(used > 500);
}

TEST_CASE("end to end: solver angles give back the weights") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Configuration config = random_floating_scene(rng, {});
    const SolveResult res = solve(config);
    const std::array<Point2, 3> proj{res.projections[0], res.projections[1], res.projections[2]};
    const auto w = weights_from_angles(angle_triple_at(res.point, proj));
    const auto expect = test::normalized(config.weights);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(w[i] - expect[i]) <= 1e-7);
  }
}
