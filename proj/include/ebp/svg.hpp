#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ebp {

// Minimal line-chart emitter: axes, one polyline per series, legend. CSV and
// JSON stay the canonical outputs; this exists for quick visual checks.
struct ChartSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

std::string render_line_chart(const std::string& title,
                              const std::vector<ChartSeries>& series,
                              int width = 760, int height = 440);

} // namespace ebp
