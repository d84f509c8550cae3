#include "ftp/plasticity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "ftp/error.hpp"
#include "ftp/solver.hpp"

namespace ftp {
namespace {

constexpr double kSineEps = 1e-12;

double checked_quotient(double num, double den, const char* what) {
  if (std::abs(den) <= kSineEps) {
    throw Error(ErrorCode::DegenerateAngles, fmt::format("{}: vanishing sine", what));
  }
  return num / den;
}

std::vector<std::size_t> sorted_by_theta(const std::vector<double>& theta) {
  std::vector<std::size_t> order(theta.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });
  return order;
}

bool is_rotation(std::span<const std::size_t> seq, std::span<const std::size_t> target) {
  const std::size_t n = seq.size();
  const auto start = std::find(seq.begin(), seq.end(), target.front());
  if (start == seq.end()) return false;
  const std::size_t offset = static_cast<std::size_t>(start - seq.begin());
  for (std::size_t k = 0; k < n; ++k) {
    if (seq[(offset + k) % n] != target[k]) return false;
  }
  return true;
}

std::vector<double> scaled_to_total(std::vector<double> w, double total) {
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x *= total / sum;
  return w;
}

}  // namespace

SectorAngles SectorAngles::from_rays(Point2 p, std::span<const Point2> projections) {
  if (projections.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "need at least three rays");
  }
  std::vector<double> theta;
  theta.reserve(projections.size());
  for (Point2 q : projections) {
    if (distance(p, q) <= kCoincidenceEps) {
      throw Error(ErrorCode::DegenerateAngle, "projection coincides with the apex");
    }
    theta.push_back(polar_angle(p, q));
  }
  SectorAngles out(std::move(theta));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (out.angle(i, j) <= kCoincidenceEps) {
        throw Error(ErrorCode::DegenerateAngles, fmt::format("rays {} and {} coincide", i, j));
      }
    }
  }
  return out;
}

SectorAngles SectorAngles::from_sectors(std::span<const double> sectors) {
  if (sectors.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "need at least three sectors");
  }
  double sum = 0.0;
  std::vector<double> theta;
  theta.reserve(sectors.size());
  for (double s : sectors) {
    if (!(s > 0.0 && s < kTwoPi)) {
      throw Error(ErrorCode::DegenerateAngles, fmt::format("sector {} outside (0, 2pi)", s));
    }
    theta.push_back(sum);
    sum += s;
  }
  if (std::abs(sum - kTwoPi) > 1e-10) {
    throw Error(ErrorCode::DegenerateAngles, fmt::format("sectors sum to {}, not 2pi", sum));
  }
  return SectorAngles(std::move(theta));
}

double SectorAngles::ccw(std::size_t i, std::size_t j) const {
  return ccw_angle(theta_.at(i), theta_.at(j));
}

double SectorAngles::angle(std::size_t i, std::size_t j) const {
  const double d = ccw(i, j);
  return d <= kPi ? d : kTwoPi - d;
}

double SectorAngles::signed_sine(std::size_t i, std::size_t j) const {
  return std::sin(theta_.at(j) - theta_.at(i));
}

bool SectorAngles::matches_cyclic_order(std::span<const std::size_t> order) const {
  if (order.size() != size()) return false;
  const std::vector<std::size_t> seq = sorted_by_theta(theta_);
  if (is_rotation(seq, order)) return true;
  std::vector<std::size_t> reversed(order.rbegin(), order.rend());
  return is_rotation(seq, reversed);
}

bool SectorAngles::labels_cyclic() const {
  std::vector<std::size_t> labels(size());
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return matches_cyclic_order(labels);
}

ApexLocation apex_in_triangle(const SectorAngles& angles, std::size_t a, std::size_t b,
                              std::size_t c) {
  // Largest of the three gaps left by the rays around P.
  const double ab = angles.ccw(a, b);
  const double ac = angles.ccw(a, c);
  const double first = std::min(ab, ac);
  const double second = std::max(ab, ac);
  const double gap = std::max({first, second - first, kTwoPi - second});
  if (gap < kPi - kSineEps) return ApexLocation::Inside;
  if (gap > kPi + kSineEps) return ApexLocation::Outside;
  return ApexLocation::Boundary;
}

std::array<double, 3> signed_triangle_weights(const SectorAngles& angles, std::size_t a,
                                              std::size_t b, std::size_t c) {
  // w_a u_a + w_b u_b + w_c u_c = 0 crossed with u_c and with u_b.
  return {1.0,
          checked_quotient(-angles.signed_sine(c, a), angles.signed_sine(c, b),
                           "triangle ratio"),
          checked_quotient(-angles.signed_sine(b, a), angles.signed_sine(b, c),
                           "triangle ratio")};
}

TriangleRatios TriangleRatios::from_angles(const SectorAngles& angles) {
  const std::size_t n = angles.size();
  TriangleRatios r;
  r.n = n;
  const auto base = signed_triangle_weights(angles, 0, 1, 2);
  r.w2_over_w1_123 = base[1];
  r.w3_over_w1_123 = base[2];
  r.w1_over_wj_13j.assign(n, std::nullopt);
  r.w1_over_wj_12j.assign(n, std::nullopt);
  for (std::size_t j = 3; j < n; ++j) {
    r.w1_over_wj_13j[j] =
        checked_quotient(-angles.signed_sine(2, j), angles.signed_sine(2, 0), "(w1/wj)_13j");
    r.w1_over_wj_12j[j] =
        checked_quotient(-angles.signed_sine(1, j), angles.signed_sine(1, 0), "(w1/wj)_12j");
  }
  return r;
}

std::vector<double> PlasticityCoefficients::evaluate(std::span<const double> free_weights,
                                                     double total) const {
  if (free_weights.size() + 3 != n) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("expected {} free weights, got {}", n - 3, free_weights.size()));
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < 3; ++i) {
    double v = total * constant[i];
    for (std::size_t k = 0; k < free_weights.size(); ++k) v += a[i][k] * free_weights[k];
    w[i] = v;
  }
  std::copy(free_weights.begin(), free_weights.end(), w.begin() + 3);
  return w;
}

PlasticityCoefficients corollary_coefficients(const TriangleRatios& ratios, std::size_t n) {
  if (n < 4 || ratios.n != n || ratios.w1_over_wj_13j.size() < n ||
      ratios.w1_over_wj_12j.size() < n) {
    throw Error(ErrorCode::MissingRatio, fmt::format("ratios do not cover {} sites", n));
  }
  const double r2 = ratios.w2_over_w1_123;
  const double r3 = ratios.w3_over_w1_123;
  const double denom = 1.0 + r2 + r3;

  PlasticityCoefficients c;
  c.n = n;
  c.constant = {1.0 / denom, r2 / denom, r3 / denom};
  for (std::size_t j = 3; j < n; ++j) {
    if (!ratios.w1_over_wj_13j[j] || !ratios.w1_over_wj_12j[j]) {
      throw Error(ErrorCode::MissingRatio, fmt::format("no triangle ratios for site {}", j));
    }
    const double b13 = *ratios.w1_over_wj_13j[j];
    const double b12 = *ratios.w1_over_wj_12j[j];
    const double a1 = (b13 * r2 + b12 * r3 - 1.0) / denom;
    c.a[0].push_back(a1);
    c.a[1].push_back(a1 * r2 - b13 * r2);
    c.a[2].push_back(a1 * r3 - b12 * r3);
  }
  return c;
}

bool has_neighbor_opposite_signs(const PlasticityCoefficients& coeffs, std::size_t site) {
  return coeffs.coefficient(0, site) < 0.0 && coeffs.coefficient(1, site) > 0.0 &&
         coeffs.coefficient(2, site) < 0.0;
}

std::array<double, 4> cosine_system_weights(const SectorAngles& angles, double w4_over_w1) {
  if (angles.size() != 4) {
    throw Error(ErrorCode::InvalidArgument, "cosine system is defined for four sites");
  }
  // Rows: the three cosine equations, the unit sum, and w4 = ratio * w1. The
  // cosine rows alone have rank two, so the last row closes the system.
  Eigen::Matrix<double, 5, 4> m;
  Eigen::Matrix<double, 5, 1> rhs = Eigen::Matrix<double, 5, 1>::Zero();
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 4; ++i) {
      m(k, i) = (i == k) ? 1.0 : std::cos(angles.angle(k, i));
    }
  }
  m.row(3).setOnes();
  rhs(3) = 1.0;
  m.row(4) << -w4_over_w1, 0.0, 0.0, 1.0;

  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 5, 4>> cod(m);
  cod.setThreshold(1e-10);
  if (cod.rank() < 4) {
    throw Error(ErrorCode::SingularSystem,
                fmt::format("closed cosine system has rank {}", cod.rank()));
  }
  const Eigen::Vector4d w = cod.solve(rhs);
  const double residual = (m * w - rhs).norm();
  if (residual > 1e-8) {
    throw Error(ErrorCode::SingularSystem,
                fmt::format("angles admit no equilibrium (residual {})", residual));
  }
  return {w(0), w(1), w(2), w(3)};
}

bool four_site_preconditions(const SectorAngles& angles) {
  if (angles.size() != 4 || !angles.labels_cyclic()) return false;
  return apex_in_triangle(angles, 0, 1, 2) == ApexLocation::Inside &&
         apex_in_triangle(angles, 0, 1, 3) == ApexLocation::Inside &&
         apex_in_triangle(angles, 0, 2, 3) == ApexLocation::Outside;
}

std::array<double, 4> plasticity_4(const SectorAngles& angles, double w4_over_w1,
                                   double total) {
  if (!four_site_preconditions(angles)) {
    throw Error(ErrorCode::GeometryPreconditionViolated,
                "P must lie inside A1'A2'A3' and A1'A2'A4' and outside A1'A3'A4'");
  }
  const std::array<double, 1> free{w4_over_w1};
  const std::vector<double> w = plasticity_n(angles, free, total);
  return {w[0], w[1], w[2], w[3]};
}

std::vector<double> plasticity_n(const SectorAngles& angles,
                                 std::span<const double> free_ratios, double total) {
  const std::size_t n = angles.size();
  if (n < 4 || free_ratios.size() + 3 != n) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} sites need {} free ratios", n, n < 3 ? 0 : n - 3));
  }
  if (!angles.labels_cyclic()) {
    throw Error(ErrorCode::GeometryPreconditionViolated,
                "projections are not in cyclic label order around P");
  }
  const TriangleRatios r = TriangleRatios::from_angles(angles);
  double bracket2 = 1.0;
  double bracket3 = 1.0;
  for (std::size_t j = 3; j < n; ++j) {
    bracket2 -= free_ratios[j - 3] * *r.w1_over_wj_13j[j];
    bracket3 -= free_ratios[j - 3] * *r.w1_over_wj_12j[j];
  }
  std::vector<double> w(n);
  w[0] = 1.0;
  w[1] = r.w2_over_w1_123 * bracket2;
  w[2] = r.w3_over_w1_123 * bracket3;
  std::copy(free_ratios.begin(), free_ratios.end(), w.begin() + 3);
  return scaled_to_total(std::move(w), total);
}

std::vector<double> cosine_residuals(const SectorAngles& angles,
                                     std::span<const double> weights) {
  std::vector<double> out(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    double r = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
      r += weights[i] * (i == k ? 1.0 : std::cos(angles.angle(k, i)));
    }
    out[k] = r;
  }
  return out;
}

std::vector<double> signed_sine_residuals(const SectorAngles& angles,
                                          std::span<const double> weights) {
  std::vector<double> out(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    double r = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
      if (i != k) r += weights[i] * angles.signed_sine(k, i);
    }
    out[k] = r;
  }
  return out;
}

std::array<double, 3> sine_residuals_4(const SectorAngles& angles,
                                       std::span<const double, 4> w) {
  const auto s = [&](std::size_t i, std::size_t j) { return std::sin(angles.angle(i, j)); };
  return {-w[0] * s(1, 0) + w[2] * s(1, 2) + w[3] * s(1, 3),
          -w[1] * s(0, 1) + w[2] * s(0, 2) + w[3] * s(0, 3),
          -w[0] * s(2, 0) + w[1] * s(2, 1) - w[3] * s(2, 3)};
}

EqualSumReport equal_sum_report(const SectorAngles& angles, std::span<const double> weights) {
  const std::size_t n = angles.size();
  if (weights.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "one weight per site required");
  }
  EqualSumReport rep;
  for (double w : weights) rep.full_ratio_sum += w / weights[0];

  const auto add = [&](std::size_t a, std::size_t b, std::size_t c) {
    const auto t = signed_triangle_weights(angles, a, b, c);
    const double sum = t[0] + t[1] + t[2];
    rep.triangles.push_back({{a, b, c}, sum});
    rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(sum - rep.full_ratio_sum));
  };
  add(0, 1, 2);
  for (std::size_t j = 3; j < n; ++j) {
    add(0, 1, j);
    add(0, 2, j);
  }
  return rep;
}

Configuration radially_shifted(const Configuration& config, Point2 p,
                               std::span<const double> shifts,
                               std::span<const double> new_radii) {
  if (shifts.size() != config.size() || (!new_radii.empty() && new_radii.size() != config.size())) {
    throw Error(ErrorCode::InvalidArgument, "one shift (and radius) per circle required");
  }
  Configuration out = config;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Point2 a = config.circles[i].center;
    out.circles[i].center = a + shifts[i] * unit(a - p);
    if (!new_radii.empty()) out.circles[i].radius = new_radii[i];
  }
  return out;
}

GeometricPlasticityReport compare_after_move(const Configuration& config,
                                             const Configuration& moved) {
  const SolveResult base = solve(config);
  if (!base.case_tag.is_floating()) {
    throw Error(ErrorCode::PreconditionViolated, "configuration is not floating");
  }
  try {
    validate(moved);
  } catch (const Error& e) {
    throw Error(ErrorCode::ShiftedConfigInvalid, e.what());
  }
  if (!classify_case(moved).is_floating()) {
    throw Error(ErrorCode::ShiftedConfigInvalid, "moved configuration is absorbed");
  }
  if (!outside_all_disks(moved, base.point)) {
    throw Error(ErrorCode::ShiftedConfigInvalid, "F-T point lies inside a moved disk");
  }
  const SolveResult after = solve(moved);
  GeometricPlasticityReport rep;
  rep.original = base.point;
  rep.shifted = after.point;
  rep.displacement = distance(base.point, after.point);
  rep.preserved = rep.displacement < 1e-7;
  return rep;
}

GeometricPlasticityReport verify_geometric_plasticity(const Configuration& config,
                                                      std::span<const double> radial_shifts,
                                                      std::span<const double> new_radii) {
  const SolveResult base = solve(config);
  if (!base.case_tag.is_floating()) {
    throw Error(ErrorCode::PreconditionViolated, "configuration is not floating");
  }
  const Configuration moved = radially_shifted(config, base.point, radial_shifts, new_radii);
  for (std::size_t i = 0; i < config.size(); ++i) {
    // The center must stay on its own ray, beyond the disk boundary.
    if (!(distance(config.circles[i].center, base.point) + radial_shifts[i] >
          moved.circles[i].radius)) {
      throw Error(ErrorCode::ShiftedConfigInvalid,
                  fmt::format("shift {} moves circle {} over the F-T point", radial_shifts[i], i));
    }
  }
  return compare_after_move(config, moved);
}

}  // namespace ftp
