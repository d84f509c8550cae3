#include "ftp/scene_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ftp/error.hpp"

namespace ftp {
namespace {

using nlohmann::ordered_json;

double number(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw Error(ErrorCode::InvalidScene, fmt::format("missing numeric field \"{}\"", key));
  }
  return it->get<double>();
}

ordered_json point_json(Point2 p) { return ordered_json{{"x", p.x}, {"y", p.y}}; }

}  // namespace

Configuration Scene::configuration() const {
  if (weights.empty()) throw Error(ErrorCode::InvalidScene, "scene has no weights");
  return make_configuration(circles, weights, tolerance, mode);
}

Scene parse_scene(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidScene, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidScene, "scene must be a JSON object");

  Scene s;
  const auto circles = doc.find("circles");
  if (circles == doc.end() || !circles->is_array()) {
    throw Error(ErrorCode::InvalidScene, "missing \"circles\" array");
  }
  for (const auto& c : *circles) {
    if (!c.is_object()) throw Error(ErrorCode::InvalidScene, "circle entries must be objects");
    s.circles.push_back({{number(c, "cx"), number(c, "cy")}, number(c, "r")});
  }
  if (const auto w = doc.find("weights"); w != doc.end()) {
    if (!w->is_array()) throw Error(ErrorCode::InvalidScene, "\"weights\" must be an array");
    for (const auto& x : *w) {
      if (!x.is_number()) throw Error(ErrorCode::InvalidScene, "weights must be numbers");
      s.weights.push_back(x.get<double>());
    }
    if (s.weights.size() != s.circles.size()) {
      throw Error(ErrorCode::InvalidScene,
                  fmt::format("{} weights for {} circles", s.weights.size(), s.circles.size()));
    }
  }
  if (const auto m = doc.find("mode"); m != doc.end()) {
    if (*m == "curve") {
      s.mode = DistanceMode::ToCurve;
    } else if (*m == "set") {
      s.mode = DistanceMode::ToSet;
    } else {
      throw Error(ErrorCode::InvalidScene, "\"mode\" must be \"curve\" or \"set\"");
    }
  }
  if (doc.contains("tolerance")) s.tolerance = number(doc, "tolerance");
  if (const auto p = doc.find("point"); p != doc.end()) {
    if (!p->is_object()) throw Error(ErrorCode::InvalidScene, "\"point\" must be an object");
    s.point = Point2{number(*p, "x"), number(*p, "y")};
  }
  return s;
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidScene, fmt::format("cannot read {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

ordered_json scene_to_json(const Configuration& config) {
  ordered_json circles = ordered_json::array();
  for (const auto& c : config.circles) {
    circles.push_back(ordered_json{{"cx", c.center.x}, {"cy", c.center.y}, {"r", c.radius}});
  }
  return ordered_json{{"circles", circles},
                      {"weights", config.weights},
                      {"mode", config.mode == DistanceMode::ToSet ? "set" : "curve"},
                      {"tolerance", config.tolerance}};
}

ordered_json solve_result_to_json(const Configuration& config, const SolveResult& result) {
  ordered_json out = scene_to_json(config);
  out["point"] = point_json(result.point);
  out["case"] = result.case_tag.is_floating() ? "floating" : "absorbed";
  out["absorbed_index"] =
      result.case_tag.is_floating() ? ordered_json(nullptr) : ordered_json(result.case_tag.index);
  ordered_json proj = ordered_json::array();
  for (Point2 p : result.projections) proj.push_back(point_json(p));
  out["projections"] = proj;
  out["distances"] = result.distances;
  out["cyclic_order"] = result.cyclic_order;
  out["sector_angles"] = result.sector_angles;
  out["objective"] = result.objective;
  out["objective_to_curve"] = result.objective_to_curve;
  out["objective_to_set"] = result.objective_to_set;
  out["equilibrium_residual"] = result.equilibrium_residual;
  out["certificate_residuals"] = result.case_tag.is_floating()
                                     ? ordered_json(certificate_residuals(result, config))
                                     : ordered_json::array();
  out["iterations"] = result.iterations;
  return out;
}

}  // namespace ftp
