#pragma once

#include <string>
#include <vector>

namespace qkd {

// One polyline on a rate-vs-loss chart. Points with nonpositive y are
// dropped (the y axis is logarithmic).
struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

// Writes a minimal log-y line chart: axes, tick labels, one polyline per
// series, and a legend.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series);

} // namespace qkd
