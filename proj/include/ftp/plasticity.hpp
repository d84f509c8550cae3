#pragma once

// Dynamic and geometric plasticity of the circle F-T tree.
//
// Site labels are 0-based in code: site 0 is A_1, site 3 is A_4, and so on.
// "Triangle ratios" (w_b / w_a)_{abc} are the weight ratios of the
// three-site inverse problem restricted to sites a, b, c. They are evaluated
// as signed sine quotients, which coincide with the three-site inverse
// weights when P is inside the sub-triangle and with the reflected-vertex
// variant (a negative ratio) when it is not.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ftp/configuration.hpp"
#include "ftp/geom.hpp"

namespace ftp {

// Directions of the rays P -> A_i' around the F-T point, indexed by site.
class SectorAngles {
 public:
  static SectorAngles from_rays(Point2 p, std::span<const Point2> projections);
  // Consecutive counter-clockwise sectors between sites 0 -> 1 -> ... -> n-1 -> 0.
  static SectorAngles from_sectors(std::span<const double> sectors);

  std::size_t size() const { return theta_.size(); }
  // Counter-clockwise angle swept from ray i to ray j, in [0, 2pi).
  double ccw(std::size_t i, std::size_t j) const;
  // Unsigned angle A_i' P A_j' in [0, pi].
  double angle(std::size_t i, std::size_t j) const;
  // sin of ccw(i, j): the cross product of the unit rays i and j.
  double signed_sine(std::size_t i, std::size_t j) const;
  // True when the sites appear around P in label order 0, 1, ..., n-1,
  // counter-clockwise or clockwise.
  bool labels_cyclic() const;
  // True when sites appear around P in exactly `order` up to rotation and
  // reflection.
  bool matches_cyclic_order(std::span<const std::size_t> order) const;

 private:
  explicit SectorAngles(std::vector<double> theta) : theta_(std::move(theta)) {}
  std::vector<double> theta_;
};

enum class ApexLocation { Inside, Boundary, Outside };

// Where P sits relative to the triangle A_a' A_b' A_c'. Decided from the ray
// directions alone: P is inside exactly when the three rays leave no gap of pi
// or more.
ApexLocation apex_in_triangle(const SectorAngles& angles, std::size_t a, std::size_t b,
                              std::size_t c);

// Weights (1, w_b / w_a, w_c / w_a) of the three-site equilibrium on rays a, b, c.
std::array<double, 3> signed_triangle_weights(const SectorAngles& angles, std::size_t a,
                                              std::size_t b, std::size_t c);

struct TriangleRatios {
  std::size_t n = 0;
  double w2_over_w1_123 = 0.0;  // (w_2/w_1)_{123}
  double w3_over_w1_123 = 0.0;  // (w_3/w_1)_{123}
  // Indexed by site; entries for sites 0..2 are unused.
  std::vector<std::optional<double>> w1_over_wj_13j;  // (w_1/w_j)_{13j}
  std::vector<std::optional<double>> w1_over_wj_12j;  // (w_1/w_j)_{12j}

  // Throws DegenerateAngles when a needed sine vanishes.
  static TriangleRatios from_angles(const SectorAngles& angles);
};

// Affine plasticity relation (w_i) = sum_j a[i][j] w_j + total * constant[i]
// for i = sites 0..2, j = free sites 3..n-1.
struct PlasticityCoefficients {
  std::size_t n = 0;
  std::array<std::vector<double>, 3> a;  // a[i][j - 3]
  std::array<double, 3> constant{};      // (w_i)_{123} normalized to sum 1

  double coefficient(std::size_t i, std::size_t site) const { return a.at(i).at(site - 3); }
  // Full weight vector from the free weights w_4..w_n at the given total.
  std::vector<double> evaluate(std::span<const double> free_weights, double total) const;
};

// Throws MissingRatio when a required triangle ratio is absent.
PlasticityCoefficients corollary_coefficients(const TriangleRatios& ratios, std::size_t n);

// Opposite-ray sign pattern of one free column: a_1 < 0, a_2 > 0, a_3 < 0.
bool has_neighbor_opposite_signs(const PlasticityCoefficients& coeffs, std::size_t site);

// Four-site inverse problem closed with the free ratio w4/w1 and sum = 1.
// Throws SingularSystem when the closed system is rank deficient or inconsistent.
std::array<double, 4> cosine_system_weights(const SectorAngles& angles, double w4_over_w1);

// P inside A1'A2'A3' and A1'A2'A4', outside A1'A3'A4', with the projections
// in cyclic order 1, 2, 3, 4.
bool four_site_preconditions(const SectorAngles& angles);

// Four-site plasticity: ratios w2/w1 and w3/w1 from the triangle ratios and
// the free ratio w4/w1, closed to the given total.
// Throws GeometryPreconditionViolated unless four_site_preconditions holds.
std::array<double, 4> plasticity_4(const SectorAngles& angles, double w4_over_w1,
                                   double total);

// n-site plasticity with free ratios w_j/w1 for j = 4..n. Requires labels in
// cyclic order. Throws GeometryPreconditionViolated otherwise.
std::vector<double> plasticity_n(const SectorAngles& angles,
                                 std::span<const double> free_ratios, double total);

// sum_i w_i cos(angle(k, i)) for every k.
std::vector<double> cosine_residuals(const SectorAngles& angles,
                                     std::span<const double> weights);

// sum_i w_i signed_sine(k, i) for every k.
std::vector<double> signed_sine_residuals(const SectorAngles& angles,
                                          std::span<const double> weights);

// The three weighted sine equations of the four-site system, written with
// unsigned angles and the signs valid under four_site_preconditions:
//   -w1 sin(21) + w3 sin(23) + w4 sin(24)
//   -w2 sin(12) + w3 sin(13) + w4 sin(14)
//   -w1 sin(31) + w2 sin(32) - w4 sin(34)
std::array<double, 3> sine_residuals_4(const SectorAngles& angles,
                                       std::span<const double, 4> weights);

struct EqualSumReport {
  struct Entry {
    std::array<std::size_t, 3> sites;
    double ratio_sum;  // 1 + (w_b/w_a) + (w_c/w_a) on triangle {a, b, c}
  };
  double full_ratio_sum = 0.0;  // sum_i w_i / w_1 over all sites
  std::vector<Entry> triangles;
  double max_discrepancy = 0.0;
};

// Compares sum_i w_i/w_1 with the ratio sums of the triangles
// {1,2,3}, {1,2,j}, {1,3,j}. The affine relation of corollary_coefficients
// does not need these to agree; the report measures how far they are apart.
EqualSumReport equal_sum_report(const SectorAngles& angles, std::span<const double> weights);

struct GeometricPlasticityReport {
  Point2 original;
  Point2 shifted;
  double displacement = 0.0;
  bool preserved = false;  // displacement < 1e-7
};

// Moves every center along the ray from p through it by shifts[i]
// (negative values move towards p). new_radii, when non-empty, replaces the radii.
Configuration radially_shifted(const Configuration& config, Point2 p,
                               std::span<const double> shifts,
                               std::span<const double> new_radii = {});

// Solves config, shifts the circles radially about its F-T point, re-solves
// and compares. Throws PreconditionViolated if config is absorbed and
// ShiftedConfigInvalid if the shifted circles overlap, are absorbed, or
// contain the original point.
GeometricPlasticityReport verify_geometric_plasticity(const Configuration& config,
                                                      std::span<const double> radial_shifts,
                                                      std::span<const double> new_radii = {});

// Same comparison for an arbitrary replacement of the circles (used for
// non-radial counterexamples). Validity checks as above.
GeometricPlasticityReport compare_after_move(const Configuration& config,
                                             const Configuration& moved);

}  // namespace ftp
