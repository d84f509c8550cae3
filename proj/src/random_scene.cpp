#include "ftp/random_scene.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ftp/error.hpp"
#include "ftp/plasticity.hpp"
#include "ftp/solver.hpp"

namespace ftp {
namespace {

bool strictly_convex_ccw(const std::vector<Point2>& pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = pts[i];
    const Point2 b = pts[(i + 1) % n];
    const Point2 c = pts[(i + 2) % n];
    if (!(cross(b - a, c - b) > 1e-9)) return false;
  }
  return true;
}

std::vector<Point2> convex_centers(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> stretch(0.85, 1.15);
  for (;;) {
    std::vector<double> t(n);
    for (double& x : t) x = angle(rng);
    std::sort(t.begin(), t.end());
    std::vector<Point2> pts;
    for (double x : t) {
      const double r = 1.5 * stretch(rng);
      pts.push_back({r * std::cos(x), r * std::sin(x)});
    }
    if (strictly_convex_ccw(pts)) return pts;
  }
}

}  // namespace

double floating_margin(const Configuration& config) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < config.size(); ++i) {
    Point2 r;
    for (std::size_t j = 0; j < config.size(); ++j) {
      if (j != i) r += config.weights[j] * unit(config.circles[i].center - config.circles[j].center);
    }
    margin = std::min(margin, (norm(r) - config.weights[i]) / config.weights[i]);
  }
  return margin;
}

Configuration rotate_labels(const Configuration& config, std::size_t offset) {
  Configuration out = config;
  const std::size_t n = config.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.circles[(i + offset) % n] = config.circles[i];
    out.weights[(i + offset) % n] = config.weights[i];
  }
  return out;
}

std::optional<std::size_t> four_site_rotation(const Configuration& config) {
  if (config.size() != 4) return std::nullopt;
  for (std::size_t k = 0; k < 4; ++k) {
    const Configuration c = rotate_labels(config, k);
    const SolveResult res = solve(c);
    if (!res.case_tag.is_floating()) return std::nullopt;
    if (four_site_preconditions(SectorAngles::from_rays(res.point, res.projections))) return k;
  }
  return std::nullopt;
}

Configuration random_floating_scene(std::mt19937_64& rng, const SceneOptions& options) {
  const std::size_t n = options.n;
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "need at least three circles");
  if (!options.weights.empty() && options.weights.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "fixed weights must match n");
  }
  std::uniform_real_distribution<double> weight(options.weight_min, options.weight_max);
  std::uniform_real_distribution<double> frac(options.radius_fraction_min,
                                              options.radius_fraction_max);

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    Configuration c;
    for (Point2 p : convex_centers(rng, n)) c.circles.push_back({p, 1e-6});
    c.weights = options.weights;
    if (c.weights.empty()) {
      for (std::size_t i = 0; i < n; ++i) c.weights.push_back(weight(rng));
    }
    if (floating_margin(c) < options.min_floating_margin) continue;

    const SolveResult point_solution = solve(c);
    const Point2 p = point_solution.point;
    bool separated = true;
    const auto rays = SectorAngles::from_rays(p, c.centers());
    for (std::size_t i = 0; i < n && separated; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rays.angle(i, j) < options.min_ray_separation) {
          separated = false;
          break;
        }
      }
    }
    if (!separated) continue;

    for (std::size_t i = 0; i < n; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) nearest = std::min(nearest, distance(c.circles[i].center, c.circles[j].center));
      }
      const double admissible =
          std::min(0.9 * distance(p, c.circles[i].center), 0.45 * nearest);
      c.circles[i].radius = frac(rng) * admissible;
    }
    validate(c);

    if (options.four_site_labeling) {
      const auto k = four_site_rotation(c);
      if (!k) continue;
      c = rotate_labels(c, *k);
    }
    return c;
  }
  throw Error(ErrorCode::InvalidArgument,
              fmt::format("no admissible scene after {} attempts", options.max_attempts));
}

Configuration random_absorbed_scene(std::mt19937_64& rng, std::size_t n, std::size_t dominant,
                                    double radius) {
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  Configuration c;
  for (Point2 p : convex_centers(rng, n)) c.circles.push_back({p, radius});
  double others = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c.weights.push_back(weight(rng));
    if (i != dominant) others += c.weights.back();
  }
  // At least the sum of the others, so no resultant can exceed it.
  c.weights[dominant] = others * 1.25;
  validate(c);
  return c;
}

}  // namespace ftp
