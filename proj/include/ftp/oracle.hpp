#pragma once

// Brute-force reference for the forward problem. Shares nothing with the
// Weiszfeld solver except the objective definition itself.

#include <array>

#include "ftp/configuration.hpp"
#include "ftp/geom.hpp"

namespace ftp {

struct OracleOptions {
  int grid_cells = 400;  // per axis; at least 100
  int refine_iterations = 200;
};

// Grid search of the exact objective over the bounding box of the centers
// inflated by the largest radius, then Nelder-Mead from the best cell. In
// ToCurve mode points inside any disk are excluded.
Point2 oracle_minimize(const Configuration& config, const OracleOptions& options = {});

// Central differences of the objective. h must lie in [1e-8, 1e-4]
// (StepTooSmall / StepTooLarge otherwise).
std::array<double, 2> finite_difference_gradient(const Configuration& config, Point2 p,
                                                 double h);

// Central difference of d(p, circle) along unit(v).
double finite_difference_directional(const Circle& circle, Point2 p, Point2 v, double h);

}  // namespace ftp
