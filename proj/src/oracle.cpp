#include "ftp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <fmt/format.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "ftp/error.hpp"

namespace ftp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double barrier_objective(const Configuration& config, Point2 p) {
  if (config.mode == DistanceMode::ToCurve && !outside_all_disks(config, p)) return kInf;
  return objective(config, p);
}

double gsl_objective(const gsl_vector* v, void* params) {
  const auto* config = static_cast<const Configuration*>(params);
  const double f = barrier_objective(*config, {gsl_vector_get(v, 0), gsl_vector_get(v, 1)});
  // nmsimplex2 tolerates large values but not inf.
  return std::isfinite(f) ? f : std::numeric_limits<double>::max() / 4;
}

void check_step(double h) {
  if (h < 1e-8) throw Error(ErrorCode::StepTooSmall, fmt::format("step {} < 1e-8", h));
  if (h > 1e-4) throw Error(ErrorCode::StepTooLarge, fmt::format("step {} > 1e-4", h));
}

}  // namespace

Point2 oracle_minimize(const Configuration& config, const OracleOptions& options) {
  const int cells = std::max(options.grid_cells, 100);
  double max_r = 0.0;
  Point2 lo{kInf, kInf};
  Point2 hi{-kInf, -kInf};
  for (const auto& c : config.circles) {
    lo = {std::min(lo.x, c.center.x), std::min(lo.y, c.center.y)};
    hi = {std::max(hi.x, c.center.x), std::max(hi.y, c.center.y)};
    max_r = std::max(max_r, c.radius);
  }
  lo -= Point2{max_r, max_r};
  hi += Point2{max_r, max_r};
  const double dx = (hi.x - lo.x) / cells;
  const double dy = (hi.y - lo.y) / cells;

  Point2 best = lo;
  double best_f = kInf;
  for (int i = 0; i <= cells; ++i) {
    for (int j = 0; j <= cells; ++j) {
      const Point2 p{lo.x + i * dx, lo.y + j * dy};
      const double f = barrier_objective(config, p);
      if (f < best_f) {
        best_f = f;
        best = p;
      }
    }
  }

  gsl_multimin_function fn{&gsl_objective, 2, const_cast<Configuration*>(&config)};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(2),
                                                             &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(2),
                                                                &gsl_vector_free);
  gsl_vector_set(x.get(), 0, best.x);
  gsl_vector_set(x.get(), 1, best.y);
  gsl_vector_set(step.get(), 0, dx);
  gsl_vector_set(step.get(), 1, dy);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> nm(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2),
      &gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(nm.get(), &fn, x.get(), step.get());
  for (int it = 0; it < options.refine_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(nm.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm.get()), 1e-12) == GSL_SUCCESS) {
      break;
    }
  }
  const Point2 refined{gsl_vector_get(nm->x, 0), gsl_vector_get(nm->x, 1)};
  return barrier_objective(config, refined) <= best_f ? refined : best;
}

std::array<double, 2> finite_difference_gradient(const Configuration& config, Point2 p,
                                                 double h) {
  check_step(h);
  const auto f = [&](Point2 q) { return objective(config, q); };
  return {(f(p + Point2{h, 0.0}) - f(p - Point2{h, 0.0})) / (2.0 * h),
          (f(p + Point2{0.0, h}) - f(p - Point2{0.0, h})) / (2.0 * h)};
}

double finite_difference_directional(const Circle& circle, Point2 p, Point2 v, double h) {
  check_step(h);
  const Point2 u = unit(v);
  return (distance_to_circle(p + h * u, circle) - distance_to_circle(p - h * u, circle)) /
         (2.0 * h);
}

}  // namespace ftp
