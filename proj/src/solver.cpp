#include "ftp/solver.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ftp/error.hpp"

namespace ftp {
namespace {

// Resultant of the unit pulls from every center but `k`, evaluated at A_k.
Point2 pull_at_center(const Configuration& config, std::size_t k) {
  Point2 r;
  const Point2 ak = config.circles[k].center;
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (j == k) continue;
    r += config.weights[j] * unit(config.circles[j].center - ak);
  }
  return r;
}

std::optional<std::size_t> coincident_center(const Configuration& config, Point2 p) {
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (distance(p, config.circles[i].center) <= kCoincidenceEps) return i;
  }
  return std::nullopt;
}

Point2 weighted_centroid(const Configuration& config) {
  Point2 c;
  for (std::size_t i = 0; i < config.size(); ++i) {
    c += config.weights[i] * config.circles[i].center;
  }
  return (1.0 / config.total_weight()) * c;
}

struct WeiszfeldOutcome {
  Point2 point;
  int iterations = 0;
};

// Fixed-point iteration for argmin sum_i w_i |p - A_i|. Only called in the
// floating case, so an iterate landing on a center is never optimal there and
// is pushed off along the descent direction.
WeiszfeldOutcome weiszfeld(const Configuration& config, Point2 p, int max_iterations) {
  const double tol = config.tolerance;
  for (int it = 1; it <= max_iterations; ++it) {
    Point2 next;
    if (auto k = coincident_center(config, p)) {
      const Point2 r = pull_at_center(config, *k);
      const double excess = norm(r) - config.weights[*k];
      double curvature = 0.0;
      for (std::size_t j = 0; j < config.size(); ++j) {
        if (j == *k) continue;
        curvature += config.weights[j] / distance(config.circles[j].center, p);
      }
      if (excess <= 0.0) return {p, it};
      next = p + (excess / curvature) * unit(r);
    } else {
      Point2 num;
      double den = 0.0;
      for (std::size_t i = 0; i < config.size(); ++i) {
        const double d = distance(p, config.circles[i].center);
        const double s = config.weights[i] / d;
        num += s * config.circles[i].center;
        den += s;
      }
      next = (1.0 / den) * num;
    }
    const double step = distance(next, p);
    p = next;
    if (step < tol && !coincident_center(config, p) &&
        equilibrium_residual(config, p) <= tol) {
      return {p, it};
    }
  }
  throw Error(ErrorCode::NonConvergence,
              fmt::format("Weiszfeld did not converge in {} iterations", max_iterations));
}

SolveResult absorbed_result(const Configuration& config, std::size_t m) {
  SolveResult res;
  const Point2 am = config.circles[m].center;
  res.point = am;
  res.case_tag = CaseTag::absorbed_at(m);
  res.equilibrium_residual = std::max(0.0, norm(pull_at_center(config, m)) - config.weights[m]);
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Circle& c = config.circles[i];
    if (i == m) {
      res.projections.push_back(am);
      res.distances.push_back(config.mode == DistanceMode::ToSet ? 0.0 : c.radius);
      res.objective_to_curve += config.weights[i] * c.radius;
    } else {
      res.projections.push_back(project_onto_circle(am, c));
      const double d = distance(am, c.center) - c.radius;
      res.distances.push_back(d);
      res.objective_to_curve += config.weights[i] * d;
      res.objective_to_set += config.weights[i] * d;
    }
  }
  res.objective =
      config.mode == DistanceMode::ToSet ? res.objective_to_set : res.objective_to_curve;
  return res;
}

}  // namespace

double equilibrium_residual(const Configuration& config, Point2 p) {
  Point2 r;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Point2 d = config.circles[i].center - p;
    if (norm(d) <= kCoincidenceEps) return std::numeric_limits<double>::infinity();
    r += config.weights[i] * unit(d);
  }
  return norm(r);
}

CaseTag classify_case(const Configuration& config) {
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (!(norm(pull_at_center(config, i)) > config.weights[i])) {
      return CaseTag::absorbed_at(i);
    }
  }
  return CaseTag::floating();
}

SolveResult solve(const Configuration& config, const SolveOptions& options) {
  validate(config);
  const CaseTag tag = classify_case(config);
  if (!tag.is_floating()) return absorbed_result(config, tag.index);

  const Point2 start = options.start.value_or(weighted_centroid(config));
  const WeiszfeldOutcome w = weiszfeld(config, start, options.max_iterations);

  SolveResult res;
  res.point = w.point;
  res.iterations = w.iterations;
  res.case_tag = tag;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Circle& c = config.circles[i];
    if (!(distance(w.point, c.center) > c.radius)) {
      throw Error(ErrorCode::SolutionInsideDisk,
                  fmt::format("disk {}: minimizer ({}, {}) lies inside it", i, w.point.x,
                              w.point.y));
    }
    res.projections.push_back(project_onto_circle(w.point, c));
    res.distances.push_back(distance_to_circle(w.point, c, config.mode));
  }
  res.objective = objective(config, w.point);
  res.objective_to_curve = res.objective;
  res.objective_to_set = res.objective;
  res.cyclic_order = cyclic_order(w.point, res.projections);
  res.sector_angles = consecutive_sectors(w.point, res.projections, res.cyclic_order);
  res.equilibrium_residual = equilibrium_residual(config, w.point);
  return res;
}

std::vector<double> certificate_residuals(const SolveResult& result,
                                          const Configuration& config) {
  if (!result.case_tag.is_floating()) {
    throw Error(ErrorCode::CalledOnAbsorbed,
                fmt::format("no angle certificate: absorbed at {}", result.case_tag.index));
  }
  const std::size_t n = config.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = config.weights[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      r += config.weights[j] *
           std::cos(angle_at(result.point, result.projections[i], result.projections[j]));
    }
    out[i] = r;
  }
  return out;
}

}  // namespace ftp
