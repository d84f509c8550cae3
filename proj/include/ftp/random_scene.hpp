#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ftp/configuration.hpp"

namespace ftp {

struct SceneOptions {
  std::size_t n = 3;
  double weight_min = 0.5;
  double weight_max = 2.0;
  // Fixed weights; overrides the random range when non-empty.
  std::vector<double> weights;
  // Radius drawn as a fraction of the largest admissible radius
  // (0.9 |P - A_i| and 0.45 of the nearest center distance).
  double radius_fraction_min = 0.1;
  double radius_fraction_max = 0.8;
  // Reject scenes whose floating inequality holds by less than this relative margin.
  double min_floating_margin = 0.05;
  // Reject scenes whose F-T point leaves two rays closer than this (radians).
  double min_ray_separation = 0.1;
  // Relabel the four circles cyclically so the four-site plasticity
  // preconditions hold (n == 4 only).
  bool four_site_labeling = false;
  int max_attempts = 10000;
};

// Floating scene with centers in convex position, labeled counter-clockwise.
// Deterministic for a given engine state.
Configuration random_floating_scene(std::mt19937_64& rng, const SceneOptions& options);

// Scene whose weights make circle `dominant` absorb the minimizer.
Configuration random_absorbed_scene(std::mt19937_64& rng, std::size_t n, std::size_t dominant,
                                    double radius);

// Relative floating margin min_i (||sum_{j != i} w_j u|| - w_i) / w_i.
double floating_margin(const Configuration& config);

// Cyclic relabeling offset k (site i becomes site (i + k) mod 4) that makes the
// four-site preconditions hold, if any.
std::optional<std::size_t> four_site_rotation(const Configuration& config);

Configuration rotate_labels(const Configuration& config, std::size_t offset);

}  // namespace ftp
