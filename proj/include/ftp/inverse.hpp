#pragma once

#include <array>
#include <span>

#include "ftp/geom.hpp"

namespace ftp {

// Angles at the F-T point for three sites. phi[q] is the angle between the
// segments to the two projections OTHER than q, i.e. the angle opposite q.
// This labeling is used everywhere in the library.
struct AngleTriple {
  std::array<double, 3> phi{};

  double sum() const { return phi[0] + phi[1] + phi[2]; }
};

// Throws DegenerateAngles unless every phi is in (0, pi) and the sum is 2pi
// within 1e-10.
void validate(const AngleTriple& angles);

// cos phi_i = (w_i^2 - w_j^2 - w_k^2) / (2 w_j w_k). Throws AbsorbedWeights
// when some w_i >= w_j + w_k.
AngleTriple angles_from_weights(double w1, double w2, double w3);

// Normalized weights w_q = sin phi_q / sum sin phi, summing to 1.
std::array<double, 3> weights_from_angles(const AngleTriple& angles);

// Opposite-angle triple read off the projections around p.
AngleTriple angle_triple_at(Point2 p, std::span<const Point2, 3> projections);

}  // namespace ftp
