#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ftp/configuration.hpp"
#include "ftp/geom.hpp"

namespace ftp {

// Floating: the minimizer sits strictly inside the region bounded by the
// circles. Absorbed: one weight dominates and the minimizer collapses to that
// circle's center.
struct CaseTag {
  enum class Kind { Floating, Absorbed };

  Kind kind = Kind::Floating;
  std::size_t index = 0;  // meaningful only when Absorbed

  static CaseTag floating() { return {}; }
  static CaseTag absorbed_at(std::size_t i) { return {Kind::Absorbed, i}; }
  bool is_floating() const { return kind == Kind::Floating; }

  friend bool operator==(const CaseTag&, const CaseTag&) = default;
};

struct SolveResult {
  Point2 point;
  std::vector<Point2> projections;  // A_i'; for the absorbing circle, its center
  std::vector<double> distances;    // d(P, gamma_i) in the configured mode
  // Indices of the projections counter-clockwise around P and the
  // consecutive sector angles between them. Empty in the absorbed case.
  std::vector<std::size_t> cyclic_order;
  std::vector<double> sector_angles;
  double objective = 0.0;
  double objective_to_curve = 0.0;
  double objective_to_set = 0.0;
  CaseTag case_tag;
  double equilibrium_residual = 0.0;
  int iterations = 0;
};

struct SolveOptions {
  int max_iterations = 10000;
  std::optional<Point2> start;  // defaults to the weighted centroid of the centers
};

// Norm of sum_i w_i unit(A_i - p) over all centers.
double equilibrium_residual(const Configuration& config, Point2 p);

// Floating when ||sum_{j != i} w_j unit(A_i - A_j)|| > w_i for every i,
// otherwise absorbed at the first violating index.
CaseTag classify_case(const Configuration& config);

// Throws SolutionInsideDisk when the minimizer over the centers falls inside
// a disk and NonConvergence when Weiszfeld exhausts max_iterations.
SolveResult solve(const Configuration& config, const SolveOptions& options = {});

// Weighted cosine residuals w_i + sum_{j != i} w_j cos(angle A_i' P A_j'),
// which vanish at the true minimizer. Throws CalledOnAbsorbed.
std::vector<double> certificate_residuals(const SolveResult& result,
                                          const Configuration& config);

}  // namespace ftp
