// svg_plot.hpp - Minimal static SVG line chart for population series:
// axes, ticks, legend, and three polylines (upper solid, middle dashed,
// lower dotted). No external plotting dependency.

#pragma once

#include "cascade/core.hpp"

#include <string>

namespace cascade::io {

std::string to_svg(const PopulationSeries& series, const std::string& title);

}  // namespace cascade::io
