#include "ftp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "ftp/error.hpp"
#include "ftp/plasticity.hpp"
#include "ftp/solver.hpp"

namespace ftp {
namespace {

constexpr std::array<std::size_t, 5> kOrderA{0, 1, 2, 3, 4};
constexpr std::array<std::size_t, 5> kOrderB{0, 4, 1, 2, 3};

using Weights = std::array<double, 5>;

struct Setup {
  EvolutionTrace trace;
  std::array<Point2, 5> rays;  // unit(A_i - P)
  PlasticityCoefficients coeffs;
};

Setup prepare(const Configuration& config, EvolutionType type, double scale) {
  if (config.size() != 5) {
    throw Error(ErrorCode::PreconditionViolated, "evolution needs exactly five circles");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::PreconditionViolated, "scale must be positive");
  }
  const SolveResult res = solve(config);
  if (!res.case_tag.is_floating()) {
    throw Error(ErrorCode::PreconditionViolated, "configuration is not floating");
  }
  const SectorAngles angles = SectorAngles::from_rays(res.point, res.projections);
  const auto& order = type == EvolutionType::TypeA ? kOrderA : kOrderB;
  if (!angles.matches_cyclic_order(order)) {
    throw Error(ErrorCode::PreconditionViolated,
                type == EvolutionType::TypeA
                    ? "rays must run 1,2,3,4,5 around P (branches 4, 5 inside angle A1 P A3)"
                    : "rays must run 1,5,2,3,4 around P (branch 4 inside A1 P A3, 5 inside A1 P A2)");
  }

  Setup s;
  s.trace.type = type;
  s.trace.point = res.point;
  s.trace.scale = scale;
  s.trace.total_weight = config.total_weight();
  for (std::size_t i = 0; i < 5; ++i) {
    s.trace.centers[i] = config.circles[i].center;
    s.rays[i] = unit(config.circles[i].center - res.point);
  }
  s.coeffs = corollary_coefficients(TriangleRatios::from_angles(angles), 5);
  return s;
}

std::optional<Termination> check_state(const EvolutionTrace& trace, const Weights& w) {
  for (double x : w) {
    if (!(x > 0.0)) return Termination::NonPositiveWeight;
  }
  for (std::size_t i = 0; i < 5; ++i) {
    if (!(distance(trace.point, trace.centers[i]) > trace.scale * w[i])) {
      return Termination::PointInsideDisk;
    }
    for (std::size_t j = i + 1; j < 5; ++j) {
      if (!(distance(trace.centers[i], trace.centers[j]) > trace.scale * (w[i] + w[j]))) {
        return Termination::Overlap;
      }
    }
  }
  return std::nullopt;
}

EvolutionStep make_step(const EvolutionTrace& trace, int index, const Weights& w,
                        const Weights& prev, const std::array<WeightChange, 5>& expected,
                        std::string branches) {
  EvolutionStep s;
  s.step = index;
  s.weights = w;
  s.active_branches = std::move(branches);
  const double eps = 1e-14 * trace.total_weight;
  for (std::size_t i = 0; i < 5; ++i) {
    s.radii[i] = trace.scale * w[i];
    const double d = w[i] - prev[i];
    s.pattern[i] = d > eps ? WeightChange::Increased
                   : d < -eps ? WeightChange::Decreased
                              : WeightChange::Unchanged;
  }
  s.pattern_matches = s.pattern == expected;
  return s;
}

void initial_step(EvolutionTrace& trace, const Configuration& config) {
  Weights w{};
  std::copy(config.weights.begin(), config.weights.end(), w.begin());
  if (auto t = check_state(trace, w)) {
    throw Error(ErrorCode::PreconditionViolated,
                fmt::format("initial scaled radii are inadmissible ({})", to_string(*t)));
  }
  std::array<WeightChange, 5> none{};
  none.fill(WeightChange::Unchanged);
  trace.steps.push_back(make_step(trace, 0, w, w, none, ""));
}

// Returns false (and records the reason) when the proposed state is invalid.
bool accept(EvolutionTrace& trace, int index, const Weights& w,
            const std::array<WeightChange, 5>& expected, std::string branches,
            double merged = 0.0) {
  if (auto t = check_state(trace, w)) {
    trace.termination = *t;
    trace.termination_step = index;
    return false;
  }
  EvolutionStep s = make_step(trace, index, w, trace.steps.back().weights, expected,
                              std::move(branches));
  s.merged_weight = merged;
  if (!s.pattern_matches) {
    trace.diagnostics.push_back(fmt::format("step {}: pattern {} differs from expected", index,
                                            trace.pattern_string(s)));
  }
  trace.steps.push_back(std::move(s));
  return true;
}

std::array<WeightChange, 5> expected_pattern(std::initializer_list<int> signs) {
  std::array<WeightChange, 5> out{};
  std::size_t i = 0;
  for (int s : signs) {
    out[i++] = s > 0 ? WeightChange::Increased
               : s < 0 ? WeightChange::Decreased
                       : WeightChange::Unchanged;
  }
  return out;
}

}  // namespace

std::string_view to_string(EvolutionType t) {
  return t == EvolutionType::TypeA ? "A" : "B";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ScheduleExhausted: return "ScheduleExhausted";
    case Termination::Overlap: return "OverlapTermination";
    case Termination::NonPositiveWeight: return "NonPositiveWeight";
    case Termination::PointInsideDisk: return "PointInsideDisk";
  }
  return "Unknown";
}

char to_char(WeightChange c) {
  switch (c) {
    case WeightChange::Increased: return '+';
    case WeightChange::Decreased: return '-';
    case WeightChange::Unchanged: return '0';
  }
  return '?';
}

std::string EvolutionTrace::pattern_string(const EvolutionStep& s) const {
  std::string out;
  for (WeightChange c : s.pattern) out.push_back(to_char(c));
  return out;
}

MergedRay merge_rays(double w3, Point2 u3, double w4, Point2 u4) {
  const Point2 sum = w3 * u3 + w4 * u4;
  const double len = norm(sum);
  return {len, len > kCoincidenceEps ? (1.0 / len) * sum : Point2{}};
}

std::vector<double> default_schedule(double total_weight, std::size_t steps) {
  std::vector<double> out(steps);
  double delta = 0.01 * total_weight;
  for (double& x : out) {
    x = delta;
    delta *= 0.9;
  }
  return out;
}

double default_scale(const Configuration& config) {
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      dmin = std::min(dmin, distance(config.circles[i].center, config.circles[j].center));
    }
  }
  return 0.1 * dmin / *std::max_element(config.weights.begin(), config.weights.end());
}

EvolutionTrace evolve_type_a(const Configuration& config,
                             std::span<const std::array<double, 2>> increments, double scale) {
  Setup s = prepare(config, EvolutionType::TypeA, scale);
  EvolutionTrace& trace = s.trace;
  initial_step(trace, config);

  for (std::size_t k = 0; k < increments.size(); ++k) {
    const auto [d4, d5] = increments[k];
    if (d4 < 0.0 || d5 < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "branch increments must be non-negative");
    }
    Weights w = trace.steps.back().weights;
    for (std::size_t i = 0; i < 3; ++i) {
      w[i] += s.coeffs.coefficient(i, 3) * d4 + s.coeffs.coefficient(i, 4) * d5;
    }
    w[3] += d4;
    w[4] += d5;
    const bool grows = d4 > 0.0 || d5 > 0.0;
    const auto expected = grows ? expected_pattern({-1, +1, -1, d4 > 0 ? 1 : 0, d5 > 0 ? 1 : 0})
                                : expected_pattern({0, 0, 0, 0, 0});
    if (!accept(trace, static_cast<int>(k) + 1, w, expected, grows ? "4,5" : "")) break;
  }
  return trace;
}

EvolutionTrace evolve_type_b(const Configuration& config, std::span<const double> increments,
                             double scale) {
  Setup s = prepare(config, EvolutionType::TypeB, scale);
  EvolutionTrace& trace = s.trace;
  initial_step(trace, config);

  for (std::size_t k = 0; k < increments.size(); ++k) {
    const double delta = increments[k];
    if (delta < 0.0) throw Error(ErrorCode::InvalidArgument, "increments must be non-negative");
    Weights w = trace.steps.back().weights;
    const int index = static_cast<int>(k) + 1;
    const bool branch4 = k % 2 == 0;

    if (branch4) {
      // Quadrilateral 1,2,3,4 with site 5 frozen: plain plasticity column of site 4.
      for (std::size_t i = 0; i < 3; ++i) w[i] += s.coeffs.coefficient(i, 3) * delta;
      w[3] += delta;
      const auto expected = delta > 0 ? expected_pattern({-1, +1, -1, +1, 0})
                                      : expected_pattern({0, 0, 0, 0, 0});
      const MergedRay m = merge_rays(w[2], s.rays[2], w[3], s.rays[3]);
      if (!accept(trace, index, w, expected, delta > 0 ? "4" : "", m.weight)) break;
      continue;
    }

    // Reduced quadrilateral 1,5,2,(3=4). The composite ray keeps its direction,
    // so w3 and w4 scale together; the total over all five circles is held.
    const MergedRay m = merge_rays(w[2], s.rays[2], w[3], s.rays[3]);
    const double kappa = (w[2] + w[3]) / m.weight;
    Eigen::Matrix3d a;
    a << s.rays[0].x, s.rays[1].x, m.direction.x,
         s.rays[0].y, s.rays[1].y, m.direction.y,
         1.0, 1.0, kappa;
    const Eigen::Vector3d rhs(-delta * s.rays[4].x, -delta * s.rays[4].y, -delta);
    const Eigen::Vector3d d = a.partialPivLu().solve(rhs);
    const double grow = (m.weight + d(2)) / m.weight;
    w[0] += d(0);
    w[1] += d(1);
    w[2] *= grow;
    w[3] *= grow;
    w[4] += delta;
    const auto expected = delta > 0 ? expected_pattern({-1, -1, +1, +1, +1})
                                    : expected_pattern({0, 0, 0, 0, 0});
    if (!accept(trace, index, w, expected, delta > 0 ? "5" : "", m.weight + d(2))) break;
  }
  return trace;
}

double self_consistency_error(const EvolutionTrace& trace, const EvolutionStep& step) {
  Configuration c;
  for (std::size_t i = 0; i < 5; ++i) c.circles.push_back({trace.centers[i], step.radii[i]});
  c.weights.assign(step.weights.begin(), step.weights.end());
  try {
    const SolveResult res = solve(c);
    if (!res.case_tag.is_floating() || distance(res.point, trace.point) > 1e-6) {
      return std::numeric_limits<double>::infinity();
    }
    const auto coeffs = corollary_coefficients(
        TriangleRatios::from_angles(SectorAngles::from_rays(res.point, res.projections)), 5);
    const std::array<double, 2> free{step.weights[3], step.weights[4]};
    const std::vector<double> w = coeffs.evaluate(free, c.total_weight());
    double err = 0.0;
    for (std::size_t i = 0; i < 5; ++i) err = std::max(err, std::abs(w[i] - step.weights[i]));
    return err;
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

double type_a_pattern_threshold(const Configuration& config, std::size_t steps, double scale,
                                double resolution) {
  const auto passes = [&](double delta) {
    std::vector<std::array<double, 2>> inc(steps);
    double d = delta;
    for (auto& x : inc) {
      x = {d, d};
      d *= 0.9;
    }
    const EvolutionTrace t = evolve_type_a(config, inc, scale);
    if (t.steps.size() != steps + 1) return false;
    return std::all_of(t.steps.begin(), t.steps.end(),
                       [](const EvolutionStep& s) { return s.pattern_matches; });
  };
  double lo = 0.0;
  double hi = config.total_weight();
  if (passes(hi)) return hi;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return lo;
}

Configuration regular_pentagon(EvolutionType type, double weight, double radius) {
  const auto& order = type == EvolutionType::TypeA ? kOrderA : kOrderB;
  Configuration c;
  c.circles.resize(5);
  c.weights.assign(5, weight);
  for (std::size_t k = 0; k < 5; ++k) {
    const double t = kPi / 2 + k * kTwoPi / 5;
    c.circles[order[k]] = {{std::cos(t), std::sin(t)}, radius};
  }
  validate(c);
  return c;
}

}  // namespace ftp
