#pragma once

// Evolution of five circles on fixed centers whose radii follow their
// weights. Each step grows one or two "branches" (weights of sites 4 and 5)
// and re-balances sites 1..3 through the plasticity relations, keeping the
// F-T point and the total weight fixed.
//
//   Type A: sites 4 and 5 lie between rays 3 and 1 (cyclic order 1,2,3,4,5)
//           and grow together.
//   Type B: site 4 lies between rays 3 and 1 and site 5 between rays 1 and 2
//           (cyclic order 1,5,2,3,4); they grow on alternate steps. Growth of
//           site 5 goes through the reduced quadrilateral 1,5,2,(3=4) whose
//           fourth ray is the vector sum of rays 3 and 4.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ftp/configuration.hpp"
#include "ftp/geom.hpp"

namespace ftp {

enum class EvolutionType { TypeA, TypeB };
enum class WeightChange { Increased, Decreased, Unchanged };
enum class Termination { ScheduleExhausted, Overlap, NonPositiveWeight, PointInsideDisk };

std::string_view to_string(EvolutionType t);
std::string_view to_string(Termination t);
char to_char(WeightChange c);  // '+', '-', '0'

struct EvolutionStep {
  int step = 0;
  std::array<double, 5> weights{};
  std::array<double, 5> radii{};
  std::string active_branches;  // "", "4", "5" or "4,5"
  std::array<WeightChange, 5> pattern{};
  bool pattern_matches = true;
  double merged_weight = 0.0;  // |w3 u3 + w4 u4| after the step (Type B)
};

struct EvolutionTrace {
  EvolutionType type = EvolutionType::TypeA;
  std::array<Point2, 5> centers{};
  Point2 point;
  double scale = 0.0;
  double total_weight = 0.0;
  std::vector<EvolutionStep> steps;  // steps[0] is the initial state
  Termination termination = Termination::ScheduleExhausted;
  int termination_step = -1;  // schedule step that would have broken an invariant
  std::vector<std::string> diagnostics;

  std::string pattern_string(const EvolutionStep& s) const;
};

struct MergedRay {
  double weight = 0.0;
  Point2 direction;
};

// w u = w3 u3 + w4 u4 for unit rays u3, u4.
MergedRay merge_rays(double w3, Point2 u3, double w4, Point2 u4);

// delta * 0.9^k with delta = 0.01 * total, k = 0..steps-1.
std::vector<double> default_schedule(double total_weight, std::size_t steps);

// Scale making the largest initial radius 10% of the smallest center distance.
double default_scale(const Configuration& config);

// Throws PreconditionViolated unless config has five floating circles in the
// cyclic order the type requires and the scaled radii are admissible.
EvolutionTrace evolve_type_a(const Configuration& config,
                             std::span<const std::array<double, 2>> increments, double scale);
EvolutionTrace evolve_type_b(const Configuration& config, std::span<const double> increments,
                             double scale);

// Re-solves the step's circles from scratch and recovers sites 1..3 from the
// plasticity relation given w4, w5 and the total. Returns the largest weight
// discrepancy (infinity if the re-solved scene is not floating at the same point).
double self_consistency_error(const EvolutionTrace& trace, const EvolutionStep& step);

// Largest initial increment delta (schedule delta * 0.9^k applied to both free
// weights) for which the first `steps` Type A steps exist and match the
// expected pattern. Found by bisection to `resolution`.
double type_a_pattern_threshold(const Configuration& config, std::size_t steps, double scale,
                                double resolution = 1e-6);

// Regular pentagon of circumradius 1 with equal weights, labeled for the
// given evolution type, radii = scale * weight.
Configuration regular_pentagon(EvolutionType type, double weight = 1.0, double radius = 0.1);

}  // namespace ftp
