#pragma once

#include <string>

#include "ftp/configuration.hpp"
#include "ftp/solver.hpp"

namespace ftp {

struct SvgOptions {
  double width_px = 640.0;
  double margin_px = 24.0;
  bool angle_arcs = true;
};

// Deterministic diagram of a solved scene. Element order: circles in input
// order, center marks, segments P -> A_i', angle arcs with degree labels,
// then the F-T point. Coordinates are printed with fixed precision so equal
// inputs give byte-identical output.
std::string render_svg(const Configuration& config, const SolveResult& result,
                       const SvgOptions& options = {});

}  // namespace ftp
