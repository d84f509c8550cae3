#include "ftp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace ftp {
namespace {

// World-to-pixel map with the y axis flipped.
struct Viewport {
  double min_x = 0.0;
  double max_y = 0.0;
  double scale = 1.0;
  double margin = 0.0;

  double px(double x) const { return margin + (x - min_x) * scale; }
  double py(double y) const { return margin + (max_y - y) * scale; }
};

std::string num(double v) {
  // Avoid "-0.0000" so output does not depend on the sign of rounding noise.
  std::string s = fmt::format("{:.4f}", v);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

}  // namespace

std::string render_svg(const Configuration& config, const SolveResult& result,
                       const SvgOptions& options) {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& c : config.circles) {
    min_x = std::min(min_x, c.center.x - c.radius);
    max_x = std::max(max_x, c.center.x + c.radius);
    min_y = std::min(min_y, c.center.y - c.radius);
    max_y = std::max(max_y, c.center.y + c.radius);
  }
  const double span = std::max(max_x - min_x, max_y - min_y);
  Viewport vp{min_x, max_y, (options.width_px - 2 * options.margin_px) / span,
              options.margin_px};
  const double width = 2 * options.margin_px + (max_x - min_x) * vp.scale;
  const double height = 2 * options.margin_px + (max_y - min_y) * vp.scale;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      num(width), num(height), num(width), num(height));
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t i = 0; i < config.size(); ++i) {
    const Circle& c = config.circles[i];
    out += fmt::format(
        "<circle id=\"circle{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#dbe9f6\" "
        "stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n",
        i + 1, num(vp.px(c.center.x)), num(vp.py(c.center.y)), num(c.radius * vp.scale));
  }
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Point2 a = config.circles[i].center;
    const double x = vp.px(a.x);
    const double y = vp.py(a.y);
    out += fmt::format(
        "<path d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"#1f4e79\" "
        "stroke-width=\"1\"/>\n",
        num(x - 4), num(y), num(x + 4), num(y), num(x), num(y - 4), num(x), num(y + 4));
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#1f4e79\">A{}</text>\n",
                       num(x + 5), num(y - 5), i + 1);
  }

  const Point2 p = result.point;
  for (std::size_t i = 0; i < result.projections.size(); ++i) {
    if (!result.case_tag.is_floating() && i == result.case_tag.index) continue;
    const Point2 q = result.projections[i];
    out += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#c0392b\" "
        "stroke-width=\"1.5\"/>\n",
        num(vp.px(p.x)), num(vp.py(p.y)), num(vp.px(q.x)), num(vp.py(q.y)));
  }

  if (options.angle_arcs && result.case_tag.is_floating()) {
    double shortest = std::numeric_limits<double>::infinity();
    for (double d : result.distances) shortest = std::min(shortest, d);
    const double rho = 0.35 * shortest;
    const std::size_t n = result.cyclic_order.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Point2 qa = result.projections[result.cyclic_order[k]];
      const Point2 qb = result.projections[result.cyclic_order[(k + 1) % n]];
      const double ta = polar_angle(p, qa);
      const double sweep = result.sector_angles[k];
      const Point2 s = p + rho * Point2{std::cos(ta), std::sin(ta)};
      const Point2 e = p + rho * unit(qb - p);
      // Counter-clockwise in world coordinates is clockwise on screen (sweep flag 0).
      out += fmt::format(
          "<path d=\"M {} {} A {} {} 0 {} 0 {} {}\" fill=\"none\" stroke=\"#7f8c8d\" "
          "stroke-width=\"1\"/>\n",
          num(vp.px(s.x)), num(vp.py(s.y)), num(rho * vp.scale), num(rho * vp.scale),
          sweep > kPi ? 1 : 0, num(vp.px(e.x)), num(vp.py(e.y)));
      const double mid = ta + 0.5 * sweep;
      const Point2 l = p + 1.6 * rho * Point2{std::cos(mid), std::sin(mid)};
      out += fmt::format(
          "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#555555\" "
          "text-anchor=\"middle\">{:.3f}&#176;</text>\n",
          num(vp.px(l.x)), num(vp.py(l.y)), sweep * 180.0 / kPi);
    }
  }

  out += fmt::format("<circle id=\"ft-point\" cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"#c0392b\"/>\n",
                     num(vp.px(p.x)), num(vp.py(p.y)));
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#c0392b\">P</text>\n",
                     num(vp.px(p.x) + 6), num(vp.py(p.y) + 14));
  out += "</svg>\n";
  return out;
}

}  // namespace ftp
