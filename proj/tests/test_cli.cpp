#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cli.hpp"
#include "ftp/evolution.hpp"
#include "ftp/random_scene.hpp"
#include "ftp/scene_io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace ftp;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ftplastic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "ftplastic_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path.string();
}

std::string read(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string scene_file(const std::string& name, const Configuration& c) {
  return write(scratch() / name, scene_to_json(c).dump(2));
}

std::vector<double> values_of(const std::string& text, const std::string& key) {
  std::vector<double> out;
  const std::regex re(key + "=([-0-9.eE+]+)");
  for (std::sregex_iterator it(text.begin(), text.end(), re), end; it != end; ++it) {
    out.push_back(std::stod((*it)[1]));
  }
  return out;
}

}  // namespace

TEST_CASE("solve prints the isogonal angles") {
  const std::string scene = scene_file("eq.json", test::equilateral());
  const Run r = run_cli({"solve", scene});
  CHECK(r.code == 0);
  CHECK(r.out.find("case=floating") != std::string::npos);
  const std::regex angle("angle\\[\\d,\\d\\]=120\\.000000°");
  CHECK(std::distance(std::sregex_iterator(r.out.begin(), r.out.end(), angle),
                      std::sregex_iterator()) == 3);
  CHECK(r.out.find("objective=1.43205080757") != std::string::npos);
  CHECK(values_of(r.out, "certificate_residual\\[\\d\\]").size() == 3);
}

TEST_CASE("solve --json feeds inverse") {
  const std::string scene = scene_file("eq.json", test::equilateral());
  const Run j = run_cli({"solve", scene, "--json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::ordered_json::parse(j.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  const std::vector<std::string> expected{
      "circles",   "weights",       "mode",           "tolerance",
      "point",     "case",          "absorbed_index", "projections",
      "distances", "cyclic_order",  "sector_angles",  "objective",
      "objective_to_curve", "objective_to_set", "equilibrium_residual",
      "certificate_residuals", "iterations"};
  CHECK(keys == expected);
  CHECK(doc["sector_angles"][0].get<double>() == doctest::Approx(kTwoPi / 3));

  const std::string solved = write(scratch() / "eq_solved.json", j.out);
  const Run inv = run_cli({"inverse", solved});
  CHECK(inv.code == 0);
  const auto w = values_of(inv.out, "w\\d");
  REQUIRE(w.size() == 3);
  for (double x : w) CHECK(x == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(inv.out.find("w1=0.333333") != std::string::npos);
}

TEST_CASE("property: solve --json round trip through inverse") {
  std::mt19937_64 rng(90);
  for (int k = 0; k < 10; ++k) {
    const Configuration c = random_floating_scene(rng, {});
    const Run j = run_cli({"solve", scene_file("rt.json", c), "--json"});
    REQUIRE(j.code == 0);
    const Run inv = run_cli({"inverse", write(scratch() / "rt_solved.json", j.out)});
    REQUIRE(inv.code == 0);
    const auto w = values_of(inv.out, "w\\d");
    const auto expect = test::normalized(c.weights);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(w[i] - expect[i]) <= 1e-7);
  }
}

TEST_CASE("inverse with free weights for four circles") {
  std::mt19937_64 rng(91);
  SceneOptions opts;
  opts.n = 4;
  const Configuration c = random_floating_scene(rng, opts);
  const Run j = run_cli({"solve", scene_file("four.json", c), "--json"});
  const std::string solved = write(scratch() / "four_solved.json", j.out);
  const Run none = run_cli({"inverse", solved});
  CHECK(none.code == 1);
  CHECK(none.err.rfind("ERROR:Underdetermined:", 0) == 0);

  // Labels follow polar angle; the scenes are generated counter-clockwise,
  // so the canonical labels are a rotation of the input labels.
  const Run plas = run_cli({"plasticity", scene_file("four.json", c)});
  REQUIRE(plas.code == 0);
  std::smatch m;
  REQUIRE(std::regex_search(plas.out, m, std::regex("4<-circle(\\d)")));
  const std::size_t fourth = std::stoul(m[1]) - 1;
  const double w4 = c.weights[fourth] / c.total_weight();
  const Run inv = run_cli({"inverse", solved, "--free", fmt::format("w4={:.17g}", w4)});
  REQUIRE(inv.code == 0);
  const auto w = values_of(inv.out, "w\\d");
  double s = 0.0;
  for (double x : w) s += x;
  CHECK(s == doctest::Approx(1.0));
  CHECK(w[3] == doctest::Approx(w4));
}

TEST_CASE("plasticity, check, verify-geometric and oracle subcommands") {
  std::mt19937_64 rng(92);
  SceneOptions opts;
  opts.n = 4;
  opts.four_site_labeling = true;
  const std::string scene = scene_file("p4.json", random_floating_scene(rng, opts));
  const Run p = run_cli({"plasticity", scene, "--free", "w4=0.3", "--total", "1"});
  CHECK(p.code == 0);
  CHECK(p.out.find("sign_pattern[4]=-+- expected") != std::string::npos);
  CHECK(p.out.find("equal_sum_discrepancy=") != std::string::npos);
  CHECK(p.out.find("four_site_preconditions=") != std::string::npos);
  CHECK(values_of(p.out, "w4") == std::vector<double>{0.3});

  const Run c = run_cli({"check", scene});
  CHECK(c.code == 0);
  CHECK(c.out.find("case=floating") != std::string::npos);
  for (double x : values_of(c.out, "resultant_excess\\[\\d\\]")) CHECK(x > 0.0);

  const Run g = run_cli({"verify-geometric", scene, "--shifts", "0.1,-0.05,0.2,0"});
  CHECK(g.code == 0);
  CHECK(g.out.find("preserved=yes") != std::string::npos);

  const Run o = run_cli({"oracle", "--seed", "42", "--n", "4"});
  CHECK(o.code == 0);
  const auto d = values_of(o.out, "disagreement");
  REQUIRE(d.size() == 1);
  CHECK(d[0] < 1e-4);

  const Run dominated = run_cli({"check", scene_file("dom.json", test::equilateral(0.1, {10, 1, 1}))});
  CHECK(dominated.out.find("case=absorbed index=1") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::string scene = scene_file("eq.json", test::equilateral());
  const fs::path a = scratch() / "a.svg";
  const fs::path b = scratch() / "b.svg";
  REQUIRE(run_cli({"solve", scene, "--svg", a.string()}).code == 0);
  REQUIRE(run_cli({"solve", scene, "--svg", b.string()}).code == 0);
  const std::string svg = read(a);
  CHECK(svg == read(b));
  // Circles, then segments, then the point.
  const auto c3 = svg.find("id=\"circle3\"");
  const auto line = svg.find("<line");
  const auto point = svg.find("id=\"ft-point\"");
  CHECK(c3 != std::string::npos);
  CHECK(c3 < line);
  CHECK(line < point);
  CHECK(svg.find("120.000&#176;") != std::string::npos);

  const std::string pent = scene_file("pent.json", regular_pentagon(EvolutionType::TypeB));
  const fs::path ca = scratch() / "a.csv";
  const fs::path cb = scratch() / "b.csv";
  const fs::path frames = scratch() / "frames";
  fs::remove_all(frames);
  const Run e = run_cli({"evolve", pent, "--type", "B", "--steps", "6", "--csv", ca.string(),
                         "--svg-frames", frames.string()});
  REQUIRE(e.code == 0);
  CHECK(e.out.find("termination=ScheduleExhausted") != std::string::npos);
  REQUIRE(run_cli({"evolve", pent, "--type", "B", "--steps", "6", "--csv", cb.string()}).code == 0);
  CHECK(read(ca) == read(cb));
  CHECK(read(ca).rfind("step,w1,w2,w3,w4,w5,r1,r2,r3,r4,r5,pattern\n", 0) == 0);
  CHECK(fs::exists(frames / "frame_0006.svg"));

  const Run g1 = run_cli({"generate", "--n", "5", "--seed", "7"});
  const Run g2 = run_cli({"generate", "--n", "5", "--seed", "7"});
  CHECK(g1.out == g2.out);
  CHECK(nlohmann::json::parse(g1.out)["circles"].size() == 5);
}

TEST_CASE("error reporting") {
  Run r = run_cli({"solve", (scratch() / "missing.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("ERROR:InvalidScene:", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  const std::string bad_count = write(
      scratch() / "bad_count.json",
      R"({"circles":[{"cx":0,"cy":0,"r":0.1},{"cx":1,"cy":0,"r":0.1},{"cx":0,"cy":1,"r":0.1}],"weights":[1,1]})");
  r = run_cli({"solve", bad_count});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("ERROR:InvalidScene:", 0) == 0);

  const std::string overlap = write(
      scratch() / "overlap.json",
      R"({"circles":[{"cx":0,"cy":0,"r":0.6},{"cx":1,"cy":0,"r":0.6},{"cx":0,"cy":3,"r":0.1}],"weights":[1,1,1]})");
  r = run_cli({"solve", overlap});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("ERROR:InvalidConfiguration:", 0) == 0);

  const std::string inside = write(
      scratch() / "inside.json",
      R"({"circles":[{"cx":-1,"cy":0,"r":0.1},{"cx":1,"cy":0,"r":0.1},{"cx":0,"cy":1,"r":0.5}],"weights":[1,1,1]})");
  r = run_cli({"solve", inside});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("ERROR:SolutionInsideDisk:", 0) == 0);

  const std::string far = write(
      scratch() / "far.json",
      R"({"circles":[{"cx":0,"cy":0,"r":0.1},{"cx":7,"cy":0,"r":0.1},{"cx":3,"cy":5,"r":0.1}],"weights":[1,2,1.5]})");
  r = run_cli({"solve", far, "--max-iterations", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("ERROR:NonConvergence:", 0) == 0);

  r = run_cli({"solve", far, "--mode", "disk"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("ERROR:InvalidArgument:", 0) == 0);

  r = run_cli({"frobnicate"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("ERROR:InvalidArgument:", 0) == 0);

  r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("solve") != std::string::npos);

  const std::string pent = scene_file("pentA.json", regular_pentagon(EvolutionType::TypeA));
  r = run_cli({"evolve", pent, "--type", "B"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("ERROR:PreconditionViolated:", 0) == 0);
}
