#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftp/configuration.hpp"
#include "ftp/solver.hpp"

namespace ftp {

// On-disk scene:
//   {"circles":[{"cx":..,"cy":..,"r":..}], "weights":[..],
//    "mode":"curve"|"set", "tolerance":1e-10, "point":{"x":..,"y":..}}
// "weights" may be omitted for scenes only used with a given point;
// "mode" and "tolerance" default to curve and 1e-10.
struct Scene {
  std::vector<Circle> circles;
  std::vector<double> weights;
  DistanceMode mode = DistanceMode::ToCurve;
  double tolerance = 1e-10;
  std::optional<Point2> point;

  // Throws InvalidScene when weights are missing, InvalidConfiguration when
  // the instance is invalid.
  Configuration configuration() const;
};

Scene parse_scene(const std::string& text);
Scene load_scene(const std::filesystem::path& path);

nlohmann::ordered_json scene_to_json(const Configuration& config);

// The scene fields followed by the full result; the output is itself a
// scene-with-point.
nlohmann::ordered_json solve_result_to_json(const Configuration& config,
                                            const SolveResult& result);

}  // namespace ftp
