#include "ftp/inverse.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ftp/error.hpp"

namespace ftp {

void validate(const AngleTriple& angles) {
  for (double a : angles.phi) {
    if (!(a > 0.0 && a < kPi)) {
      throw Error(ErrorCode::DegenerateAngles, fmt::format("angle {} outside (0, pi)", a));
    }
  }
  if (std::abs(angles.sum() - kTwoPi) > 1e-10) {
    throw Error(ErrorCode::DegenerateAngles,
                fmt::format("angles sum to {} instead of 2pi", angles.sum()));
  }
}

AngleTriple angles_from_weights(double w1, double w2, double w3) {
  const std::array<double, 3> w{w1, w2, w3};
  for (double x : w) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::InvalidArgument, "weights must be positive and finite");
    }
  }
  AngleTriple out;
  for (int i = 0; i < 3; ++i) {
    const double wi = w[i];
    const double wj = w[(i + 1) % 3];
    const double wk = w[(i + 2) % 3];
    if (!(wi < wj + wk)) {
      throw Error(ErrorCode::AbsorbedWeights,
                  fmt::format("weight {} = {} is not below the sum of the other two", i, wi));
    }
    const double c = (wi * wi - wj * wj - wk * wk) / (2.0 * wj * wk);
    if (!(c > -1.0 && c < 1.0)) {
      throw Error(ErrorCode::AbsorbedWeights,
                  fmt::format("cos phi_{} = {} leaves (-1, 1)", i, c));
    }
    out.phi[i] = std::acos(c);
  }
  return out;
}

std::array<double, 3> weights_from_angles(const AngleTriple& angles) {
  validate(angles);
  std::array<double, 3> s{};
  for (int i = 0; i < 3; ++i) {
    s[i] = std::sin(angles.phi[i]);
    if (s[i] <= 1e-12) {
      throw Error(ErrorCode::DegenerateAngles, fmt::format("sin phi_{} vanishes", i));
    }
  }
  const double total = s[0] + s[1] + s[2];
  std::array<double, 3> w{s[0] / total, s[1] / total, 0.0};
  // Every weight is below 1/2 for a valid triple, so w0 + w1 lies in [1/2, 1]
  // and 1 - (w0 + w1) is exact: (w0 + w1) + w2 == 1 bit for bit.
  w[2] = 1.0 - (w[0] + w[1]);
  return w;
}

AngleTriple angle_triple_at(Point2 p, std::span<const Point2, 3> projections) {
  AngleTriple out;
  for (int q = 0; q < 3; ++q) {
    out.phi[q] = angle_at(p, projections[(q + 1) % 3], projections[(q + 2) % 3]);
  }
  return out;
}

}  // namespace ftp
