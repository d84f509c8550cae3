#pragma once

#include <string>

#include "ftp/evolution.hpp"

namespace ftp {

// Header step,w1..w5,r1..r5,pattern; one row per step, 12 significant digits.
std::string trace_to_csv(const EvolutionTrace& trace);

// One frame of an evolution: the five circles at the step's radii, segments
// from the fixed point to their projections, and the point.
std::string render_evolution_frame(const EvolutionTrace& trace, const EvolutionStep& step);

}  // namespace ftp
