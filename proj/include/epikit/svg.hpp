#pragma once

#include <string>
#include <vector>

namespace epikit {

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

/// Minimal multi-line SVG plot: polylines, axes, tick labels, legend.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series);

} // namespace epikit
