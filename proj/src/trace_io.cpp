#include "ftp/trace_io.hpp"

#include <vector>

#include <fmt/format.h>

#include "ftp/svg.hpp"

namespace ftp {

std::string trace_to_csv(const EvolutionTrace& trace) {
  std::string out = "step,w1,w2,w3,w4,w5,r1,r2,r3,r4,r5,pattern\n";
  for (const EvolutionStep& s : trace.steps) {
    out += fmt::format("{}", s.step);
    for (double w : s.weights) out += fmt::format(",{:.12g}", w);
    for (double r : s.radii) out += fmt::format(",{:.12g}", r);
    out += fmt::format(",{}\n", trace.pattern_string(s));
  }
  return out;
}

std::string render_evolution_frame(const EvolutionTrace& trace, const EvolutionStep& step) {
  Configuration config;
  for (std::size_t i = 0; i < 5; ++i) {
    config.circles.push_back({trace.centers[i], step.radii[i]});
    config.weights.push_back(step.weights[i]);
  }
  // The point is fixed along the trace, so the frame is assembled directly
  // instead of re-solving.
  SolveResult res;
  res.point = trace.point;
  for (const Circle& c : config.circles) {
    res.projections.push_back(project_onto_circle(trace.point, c));
    res.distances.push_back(distance_to_circle(trace.point, c));
  }
  res.cyclic_order = cyclic_order(trace.point, res.projections);
  res.sector_angles = consecutive_sectors(trace.point, res.projections, res.cyclic_order);
  return render_svg(config, res);
}

}  // namespace ftp
