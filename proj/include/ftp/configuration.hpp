#pragma once

#include <cstddef>
#include <vector>

#include "ftp/geom.hpp"

namespace ftp {

// A problem instance: n >= 3 pairwise disjoint circles with positive weights.
struct Configuration {
  std::vector<Circle> circles;
  std::vector<double> weights;
  double tolerance = 1e-10;
  DistanceMode mode = DistanceMode::ToCurve;

  std::size_t size() const { return circles.size(); }
  std::vector<Point2> centers() const;
  double total_weight() const;
};

// Throws InvalidConfiguration naming the first violated invariant.
void validate(const Configuration& config);

// Builds and validates in one step.
Configuration make_configuration(std::vector<Circle> circles, std::vector<double> weights,
                                 double tolerance = 1e-10,
                                 DistanceMode mode = DistanceMode::ToCurve);

// sum_i w_i d(p, gamma_i) under config.mode.
double objective(const Configuration& config, Point2 p);

// True when p lies strictly outside every closed disk.
bool outside_all_disks(const Configuration& config, Point2 p);

}  // namespace ftp
