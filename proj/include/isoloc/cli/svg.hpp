#pragma once

#include <string>
#include <vector>

namespace isoloc {

struct ChartSeries {
    enum class Style { line, dashed, points };
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
    Style style = Style::line;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
};

/// 640×420 SVG with axes, five ticks per axis and a legend. Output bytes
/// depend only on the chart. Throws Error when no series has a point.
std::string render_svg(const Chart& chart);

}  // namespace isoloc
