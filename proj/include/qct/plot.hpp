#pragma once

#include <string>
#include <vector>

namespace qct {

/// Renders y-versus-index series as a polyline plot into an 8-bit PGM.
/// Switches to a log10 y-axis when every sample is positive and the range
/// spans more than two decades. Intended for quick-look convergence plots,
/// not publication figures.
void write_line_plot(const std::vector<double>& values, const std::string& path,
                     int width = 640, int height = 420);

}  // namespace qct
