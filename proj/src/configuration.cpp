#include "ftp/configuration.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ftp/error.hpp"

namespace ftp {

std::vector<Point2> Configuration::centers() const {
  std::vector<Point2> out;
  out.reserve(circles.size());
  for (const auto& c : circles) out.push_back(c.center);
  return out;
}

double Configuration::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void validate(const Configuration& config) {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::InvalidConfiguration, what);
  };
  const std::size_t n = config.circles.size();
  if (n < 3) fail(fmt::format("need at least 3 circles, got {}", n));
  if (config.weights.size() != n) {
    fail(fmt::format("{} weights for {} circles", config.weights.size(), n));
  }
  if (!(config.tolerance > 0.0) || !std::isfinite(config.tolerance)) {
    fail("tolerance must be positive and finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Circle& c = config.circles[i];
    if (!is_finite(c.center)) fail(fmt::format("circle {} has a non-finite center", i));
    if (!(c.radius > 0.0) || !std::isfinite(c.radius)) {
      fail(fmt::format("circle {} radius must be positive and finite", i));
    }
    if (!(config.weights[i] > 0.0) || !std::isfinite(config.weights[i])) {
      fail(fmt::format("weight {} must be positive and finite", i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Circle& a = config.circles[i];
      const Circle& b = config.circles[j];
      if (!(distance(a.center, b.center) > a.radius + b.radius)) {
        fail(fmt::format("circles {} and {} overlap", i, j));
      }
    }
  }
}

Configuration make_configuration(std::vector<Circle> circles, std::vector<double> weights,
                                 double tolerance, DistanceMode mode) {
  Configuration config{std::move(circles), std::move(weights), tolerance, mode};
  validate(config);
  return config;
}

double objective(const Configuration& config, Point2 p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    sum += config.weights[i] * distance_to_circle(p, config.circles[i], config.mode);
  }
  return sum;
}

bool outside_all_disks(const Configuration& config, Point2 p) {
  for (const auto& c : config.circles) {
    if (!(distance(p, c.center) > c.radius)) return false;
  }
  return true;
}

}  // namespace ftp
