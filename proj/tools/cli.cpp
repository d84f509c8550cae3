#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ftp/error.hpp"
#include "ftp/evolution.hpp"
#include "ftp/inverse.hpp"
#include "ftp/oracle.hpp"
#include "ftp/plasticity.hpp"
#include "ftp/random_scene.hpp"
#include "ftp/scene_io.hpp"
#include "ftp/solver.hpp"
#include "ftp/svg.hpp"
#include "ftp/trace_io.hpp"

namespace ftp::cli {
namespace {

constexpr double kDeg = 180.0 / kPi;

std::string pt(Point2 p) { return fmt::format("({:.12g}, {:.12g})", p.x, p.y); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot write {}", path.string()));
  f << text;
}

DistanceMode parse_mode(const std::string& s) {
  if (s == "curve") return DistanceMode::ToCurve;
  if (s == "set") return DistanceMode::ToSet;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown mode \"{}\"", s));
}

// The point a command works at: the scene's own point when it has one,
// otherwise the solver's (which must be floating).
Point2 working_point(const Scene& scene) {
  if (scene.point) return *scene.point;
  const Configuration config = scene.configuration();
  const SolveResult res = solve(config);
  if (!res.case_tag.is_floating()) {
    throw Error(ErrorCode::CalledOnAbsorbed,
                fmt::format("scene is absorbed at circle {}", res.case_tag.index + 1));
  }
  return res.point;
}

std::vector<Point2> projections_at(const Scene& scene, Point2 p) {
  std::vector<Point2> out;
  for (const Circle& c : scene.circles) out.push_back(project_onto_circle(p, c));
  return out;
}

// Counter-clockwise order of the rays by polar angle about p, starting at the
// smallest. Label k of the plasticity relations is input circle order[k - 1] + 1.
std::vector<std::size_t> canonical_order(Point2 p, const std::vector<Point2>& projections) {
  return cyclic_order(p, projections);
}

// Parses "w4=0.3,w5=0.2" into the free weights w_4..w_n (labels 4..n).
std::vector<double> parse_free(const std::string& text, std::size_t n) {
  std::map<std::size_t, double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (item.size() < 4 || item[0] != 'w' || eq == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("bad --free entry \"{}\"", item));
    }
    try {
      values[std::stoul(item.substr(1, eq - 1))] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("bad --free entry \"{}\"", item));
    }
    pos = end + 1;
  }
  std::vector<double> free;
  for (std::size_t k = 4; k <= n; ++k) {
    const auto it = values.find(k);
    if (it == values.end()) {
      throw Error(ErrorCode::Underdetermined, fmt::format("--free needs a value for w{}", k));
    }
    free.push_back(it->second);
    values.erase(it);
  }
  if (!values.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("--free label w{} out of range 4..{}", values.begin()->first, n));
  }
  return free;
}

struct Plasticity {
  std::vector<std::size_t> order;
  SectorAngles angles;
  PlasticityCoefficients coeffs;
};

Plasticity plasticity_at(const Scene& scene, Point2 p) {
  const std::vector<Point2> proj = projections_at(scene, p);
  std::vector<std::size_t> order = canonical_order(p, proj);
  std::vector<Point2> relabeled;
  for (std::size_t i : order) relabeled.push_back(proj[i]);
  SectorAngles angles = SectorAngles::from_rays(p, relabeled);
  PlasticityCoefficients coeffs =
      corollary_coefficients(TriangleRatios::from_angles(angles), scene.circles.size());
  return {std::move(order), std::move(angles), std::move(coeffs)};
}

void print_labeling(std::ostream& out, const std::vector<std::size_t>& order) {
  out << "labeling:";
  for (std::size_t k = 0; k < order.size(); ++k) {
    out << fmt::format(" {}<-circle{}", k + 1, order[k] + 1);
  }
  out << '\n';
}

int cmd_solve(std::ostream& out, const std::string& path, const std::string& mode,
              const std::string& svg, bool json, int max_iterations) {
  Scene scene = load_scene(path);
  if (!mode.empty()) scene.mode = parse_mode(mode);
  const Configuration config = scene.configuration();
  SolveOptions opts;
  opts.max_iterations = max_iterations;
  const SolveResult res = solve(config, opts);
  if (!svg.empty()) write_file(svg, render_svg(config, res));
  if (json) {
    out << solve_result_to_json(config, res).dump(2) << '\n';
    return 0;
  }
  if (res.case_tag.is_floating()) {
    out << "case=floating\n";
  } else {
    out << fmt::format("case=absorbed index={}\n", res.case_tag.index + 1);
  }
  out << fmt::format("P={}\n", pt(res.point));
  for (std::size_t i = 0; i < config.size(); ++i) {
    out << fmt::format("projection[{}]={} distance={:.12g}\n", i + 1, pt(res.projections[i]),
                       res.distances[i]);
  }
  if (res.case_tag.is_floating()) {
    const std::size_t n = res.cyclic_order.size();
    for (std::size_t k = 0; k < n; ++k) {
      out << fmt::format("angle[{},{}]={:.6f}°\n", res.cyclic_order[k] + 1,
                         res.cyclic_order[(k + 1) % n] + 1, res.sector_angles[k] * kDeg);
    }
  }
  out << fmt::format("objective={:.12g}\n", res.objective);
  out << fmt::format("objective_to_curve={:.12g}\n", res.objective_to_curve);
  out << fmt::format("objective_to_set={:.12g}\n", res.objective_to_set);
  out << fmt::format("equilibrium_residual={:.3e}\n", res.equilibrium_residual);
  if (res.case_tag.is_floating()) {
    const std::vector<double> cert = certificate_residuals(res, config);
    for (std::size_t i = 0; i < cert.size(); ++i) {
      out << fmt::format("certificate_residual[{}]={:.3e}\n", i + 1, cert[i]);
    }
  }
  out << fmt::format("iterations={}\n", res.iterations);
  return 0;
}

int cmd_inverse(std::ostream& out, const std::string& path, const std::string& free) {
  const Scene scene = load_scene(path);
  if (!scene.point) throw Error(ErrorCode::InvalidScene, "scene has no \"point\"");
  const Point2 p = *scene.point;
  const std::size_t n = scene.circles.size();
  const std::vector<Point2> proj = projections_at(scene, p);
  if (n == 3) {
    const std::array<Point2, 3> tri{proj[0], proj[1], proj[2]};
    const std::array<double, 3> w = weights_from_angles(angle_triple_at(p, tri));
    for (std::size_t i = 0; i < 3; ++i) out << fmt::format("w{}={:.12g}\n", i + 1, w[i]);
    return 0;
  }
  if (free.empty()) {
    throw Error(ErrorCode::Underdetermined,
                fmt::format("{} circles leave {} free weights; pass --free", n, n - 3));
  }
  const Plasticity pl = plasticity_at(scene, p);
  const std::vector<double> w = pl.coeffs.evaluate(parse_free(free, n), 1.0);
  print_labeling(out, pl.order);
  for (std::size_t k = 0; k < n; ++k) out << fmt::format("w{}={:.12g}\n", k + 1, w[k]);
  return 0;
}

int cmd_plasticity(std::ostream& out, const std::string& path, const std::string& free,
                   std::optional<double> total) {
  const Scene scene = load_scene(path);
  const std::size_t n = scene.circles.size();
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "plasticity needs at least 4 circles");
  const Point2 p = working_point(scene);
  const Plasticity pl = plasticity_at(scene, p);

  std::vector<double> free_weights;
  if (!free.empty()) {
    free_weights = parse_free(free, n);
  } else if (!scene.weights.empty()) {
    for (std::size_t k = 3; k < n; ++k) free_weights.push_back(scene.weights[pl.order[k]]);
  } else {
    throw Error(ErrorCode::Underdetermined, "scene has no weights; pass --free");
  }
  double t = 1.0;
  if (total) {
    t = *total;
  } else if (!scene.weights.empty()) {
    t = 0.0;
    for (double w : scene.weights) t += w;
  }

  const std::vector<double> w = pl.coeffs.evaluate(free_weights, t);
  out << fmt::format("P={}\n", pt(p));
  print_labeling(out, pl.order);
  out << fmt::format("total={:.12g}\n", t);
  for (std::size_t k = 0; k < n; ++k) out << fmt::format("w{}={:.12g}\n", k + 1, w[k]);
  for (std::size_t i = 0; i < 3; ++i) {
    out << fmt::format("constant{}={:.12g}\n", i + 1, pl.coeffs.constant[i]);
  }
  for (std::size_t j = 3; j < n; ++j) {
    std::string signs;
    for (std::size_t i = 0; i < 3; ++i) {
      const double a = pl.coeffs.coefficient(i, j);
      out << fmt::format("a{},{}={:.12g}\n", i + 1, j + 1, a);
      signs += a > 0.0 ? '+' : (a < 0.0 ? '-' : '0');
    }
    out << fmt::format("sign_pattern[{}]={} {}\n", j + 1, signs,
                       has_neighbor_opposite_signs(pl.coeffs, j) ? "expected" : "unexpected");
  }
  const EqualSumReport report = equal_sum_report(pl.angles, w);
  out << fmt::format("ratio_sum={:.12g}\n", report.full_ratio_sum);
  for (const auto& e : report.triangles) {
    out << fmt::format("triangle_ratio_sum[{},{},{}]={:.12g}\n", e.sites[0] + 1, e.sites[1] + 1,
                       e.sites[2] + 1, e.ratio_sum);
  }
  out << fmt::format("equal_sum_discrepancy={:.3e}\n", report.max_discrepancy);
  if (n == 4) {
    out << fmt::format("four_site_preconditions={}\n",
                       four_site_preconditions(pl.angles) ? "yes" : "no");
  }
  return 0;
}

int cmd_check(std::ostream& out, const std::string& path) {
  const Scene scene = load_scene(path);
  const Configuration config = scene.configuration();
  const CaseTag tag = classify_case(config);
  if (tag.is_floating()) {
    out << "case=floating\n";
  } else {
    out << fmt::format("case=absorbed index={}\n", tag.index + 1);
  }
  // Resultant inequality ||sum_{j != i} w_j u|| - w_i, positive when site i does not absorb.
  for (std::size_t i = 0; i < config.size(); ++i) {
    Point2 r;
    for (std::size_t j = 0; j < config.size(); ++j) {
      if (j == i) continue;
      r += config.weights[j] * unit(config.circles[j].center - config.circles[i].center);
    }
    out << fmt::format("resultant_excess[{}]={:.12g}\n", i + 1, norm(r) - config.weights[i]);
  }
  const SolveResult res = solve(config);
  out << fmt::format("P={}\n", pt(res.point));
  out << fmt::format("equilibrium_residual={:.3e}\n", res.equilibrium_residual);
  if (res.case_tag.is_floating()) {
    const std::vector<double> cert = certificate_residuals(res, config);
    for (std::size_t i = 0; i < cert.size(); ++i) {
      out << fmt::format("certificate_residual[{}]={:.3e}\n", i + 1, cert[i]);
    }
  }
  return 0;
}

struct EvolveArgs {
  std::string path;
  std::string type;
  int steps = 10;
  std::optional<double> delta;
  std::optional<double> scale;
  std::string csv;
  std::string svg_frames;
};

int cmd_evolve(std::ostream& out, const EvolveArgs& a) {
  const Configuration config = load_scene(a.path).configuration();
  if (config.size() != 5) throw Error(ErrorCode::PreconditionViolated, "evolve needs 5 circles");
  if (a.steps < 0) throw Error(ErrorCode::InvalidArgument, "--steps must be non-negative");
  const double scale = a.scale.value_or(default_scale(config));
  std::vector<double> schedule = default_schedule(config.total_weight(), a.steps);
  if (a.delta) {
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      schedule[k] = *a.delta * std::pow(0.9, static_cast<double>(k));
    }
  }
  EvolutionTrace trace;
  if (a.type == "A") {
    std::vector<std::array<double, 2>> inc;
    for (double d : schedule) inc.push_back({d, d});
    trace = evolve_type_a(config, inc, scale);
  } else if (a.type == "B") {
    trace = evolve_type_b(config, schedule, scale);
  } else {
    throw Error(ErrorCode::InvalidArgument, "--type must be A or B");
  }

  if (!a.csv.empty()) write_file(a.csv, trace_to_csv(trace));
  if (!a.svg_frames.empty()) {
    std::filesystem::create_directories(a.svg_frames);
    for (const EvolutionStep& s : trace.steps) {
      write_file(std::filesystem::path(a.svg_frames) / fmt::format("frame_{:04d}.svg", s.step),
                 render_evolution_frame(trace, s));
    }
  }

  out << fmt::format("type={} P={} scale={:.12g}\n", to_string(trace.type), pt(trace.point),
                     trace.scale);
  for (const EvolutionStep& s : trace.steps) {
    out << fmt::format("step={} branches={} pattern={} {} w=", s.step,
                       s.active_branches.empty() ? "-" : s.active_branches,
                       trace.pattern_string(s), s.pattern_matches ? "expected" : "unexpected");
    for (std::size_t i = 0; i < 5; ++i) out << fmt::format("{}{:.12g}", i ? "," : "", s.weights[i]);
    out << '\n';
  }
  out << fmt::format("termination={}", to_string(trace.termination));
  if (trace.termination_step >= 0) out << fmt::format(" at_step={}", trace.termination_step);
  out << '\n';
  for (const std::string& d : trace.diagnostics) out << "diagnostic: " << d << '\n';
  return 0;
}

int cmd_oracle(std::ostream& out, const std::string& path, std::optional<std::uint64_t> seed,
               std::size_t n) {
  Configuration config;
  if (!path.empty()) {
    config = load_scene(path).configuration();
  } else if (seed) {
    std::mt19937_64 rng(*seed);
    SceneOptions opts;
    opts.n = n;
    config = random_floating_scene(rng, opts);
    out << fmt::format("seed={} n={}\n", *seed, n);
  } else {
    throw Error(ErrorCode::InvalidArgument, "oracle needs a scene or --seed");
  }
  const SolveResult res = solve(config);
  const Point2 q = oracle_minimize(config);
  out << fmt::format("P_solver={}\n", pt(res.point));
  out << fmt::format("P_oracle={}\n", pt(q));
  out << fmt::format("objective_solver={:.12g}\n", objective(config, res.point));
  out << fmt::format("objective_oracle={:.12g}\n", objective(config, q));
  out << fmt::format("disagreement={:.3e}\n", distance(res.point, q));
  return 0;
}

int cmd_verify_geometric(std::ostream& out, const std::string& path,
                         const std::vector<double>& shifts, const std::vector<double>& radii) {
  const Configuration config = load_scene(path).configuration();
  if (shifts.size() != config.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} shifts for {} circles", shifts.size(), config.size()));
  }
  if (!radii.empty() && radii.size() != config.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} radii for {} circles", radii.size(), config.size()));
  }
  const GeometricPlasticityReport r = verify_geometric_plasticity(config, shifts, radii);
  out << fmt::format("P={}\n", pt(r.original));
  out << fmt::format("P_shifted={}\n", pt(r.shifted));
  out << fmt::format("displacement={:.3e}\n", r.displacement);
  out << fmt::format("preserved={}\n", r.preserved ? "yes" : "no");
  return 0;
}

int cmd_generate(std::ostream& out, std::size_t n, std::uint64_t seed, const std::string& path,
                 bool equal_weights) {
  std::mt19937_64 rng(seed);
  SceneOptions opts;
  opts.n = n;
  if (equal_weights) opts.weights.assign(n, 1.0);
  const std::string text = scene_to_json(random_floating_scene(rng, opts)).dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Fermat-Torricelli points of circles and their plasticity"};
  app.name("ftplastic");
  app.require_subcommand(1);

  std::string scene_path;
  std::string mode;
  std::string svg;
  bool json = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the forward problem for a scene");
  solve_cmd->add_option("scene", scene_path, "Scene JSON")->required();
  solve_cmd->add_option("--mode", mode, "Distance to the curve or to the disk (curve|set)");
  solve_cmd->add_option("--svg", svg, "Write a diagram");
  solve_cmd->add_flag("--json", json, "Print the full result as JSON");
  int max_iterations = SolveOptions{}.max_iterations;
  solve_cmd->add_option("--max-iterations", max_iterations, "Weiszfeld iteration limit");

  std::string free;
  auto* inverse_cmd = app.add_subcommand("inverse", "Recover weights from a scene with a point");
  inverse_cmd->add_option("scene", scene_path, "Scene JSON with \"point\"")->required();
  inverse_cmd->add_option("--free", free, "Free weights for n > 3, e.g. w4=0.2,w5=0.1");

  std::optional<double> total;
  auto* plasticity_cmd = app.add_subcommand("plasticity", "Plasticity weights and coefficients");
  plasticity_cmd->add_option("scene", scene_path, "Scene JSON")->required();
  plasticity_cmd->add_option("--free", free, "Free weights, e.g. w4=0.2,w5=0.1");
  plasticity_cmd->add_option("--total", total, "Total weight");

  auto* check_cmd = app.add_subcommand("check", "Classify the scene and print certificates");
  check_cmd->add_option("scene", scene_path, "Scene JSON")->required();

  EvolveArgs ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve five circles (type A or B)");
  evolve_cmd->add_option("scene", ev.path, "Scene JSON")->required();
  evolve_cmd->add_option("--type", ev.type, "A or B")->required();
  evolve_cmd->add_option("--steps", ev.steps, "Number of schedule steps");
  evolve_cmd->add_option("--delta", ev.delta, "First increment (default 1% of the total)");
  evolve_cmd->add_option("--scale", ev.scale, "Radius per unit weight");
  evolve_cmd->add_option("--csv", ev.csv, "Write the trace as CSV");
  evolve_cmd->add_option("--svg-frames", ev.svg_frames, "Write one SVG per step here");

  std::optional<std::uint64_t> seed;
  std::size_t n = 3;
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the solver with brute force");
  oracle_cmd->add_option("scene", scene_path, "Scene JSON");
  oracle_cmd->add_option("--seed", seed, "Random scene seed");
  oracle_cmd->add_option("--n", n, "Circles in the random scene");

  std::vector<double> shifts;
  std::vector<double> radii;
  auto* geo_cmd = app.add_subcommand("verify-geometric", "Shift circles along their rays");
  geo_cmd->add_option("scene", scene_path, "Scene JSON")->required();
  geo_cmd->add_option("--shifts", shifts, "Radial shift per circle")->required()->delimiter(',');
  geo_cmd->add_option("--radii", radii, "New radius per circle")->delimiter(',');

  std::string output;
  bool equal_weights = false;
  std::uint64_t gen_seed = 42;
  auto* generate_cmd = app.add_subcommand("generate", "Write a random floating scene");
  generate_cmd->add_option("--n", n, "Number of circles");
  generate_cmd->add_option("--seed", gen_seed, "Random seed");
  generate_cmd->add_option("-o,--output", output, "Output path (default stdout)");
  generate_cmd->add_flag("--equal-weights", equal_weights, "Use unit weights");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << fmt::format("ERROR:{}:{}\n", to_string(ErrorCode::InvalidArgument), e.what());
    return 1;
  }

  try {
    if (*solve_cmd) return cmd_solve(out, scene_path, mode, svg, json, max_iterations);
    if (*inverse_cmd) return cmd_inverse(out, scene_path, free);
    if (*plasticity_cmd) return cmd_plasticity(out, scene_path, free, total);
    if (*check_cmd) return cmd_check(out, scene_path);
    if (*evolve_cmd) return cmd_evolve(out, ev);
    if (*oracle_cmd) return cmd_oracle(out, scene_path, seed, n);
    if (*geo_cmd) return cmd_verify_geometric(out, scene_path, shifts, radii);
    if (*generate_cmd) return cmd_generate(out, n, gen_seed, output, equal_weights);
  } catch (const Error& e) {
    err << fmt::format("ERROR:{}:{}\n", to_string(e.code()), e.what());
    return e.code() == ErrorCode::NonConvergence ? 2 : 1;
  } catch (const std::exception& e) {
    err << fmt::format("ERROR:{}:{}\n", to_string(ErrorCode::InvalidArgument), e.what());
    return 1;
  }
  return 1;
}

}  // namespace ftp::cli
