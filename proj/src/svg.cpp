#include "qkd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace qkd {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;

} // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series) {
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double ly_min = std::numeric_limits<double>::infinity();
    double ly_max = -ly_min;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.y[i] > 0.0)) continue;
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            ly_min = std::min(ly_min, std::log10(s.y[i]));
            ly_max = std::max(ly_max, std::log10(s.y[i]));
        }
    }
    if (!(x_max > x_min)) {
        x_min = 0.0;
        x_max = 1.0;
    }
    ly_min = std::floor(ly_min);
    ly_max = std::ceil(ly_max);
    if (!(ly_max > ly_min)) {
        ly_min = -1.0;
        ly_max = 0.0;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) {
        return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
    };
    auto py = [&](double y) {
        const double ly = std::log10(y);
        return kMarginTop + (ly_max - ly) / (ly_max - ly_min) * plot_h;
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"25\" text-anchor=\"middle\" "
           "font-size=\"16\">" << title << "</text>\n";

    // axes
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";

    // y decade gridlines
    for (double d = ly_min; d <= ly_max + 0.5; d += 1.0) {
        const double y = kMarginTop + (ly_max - d) / (ly_max - ly_min) * plot_h;
        out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << y << "\" x2=\""
            << kMarginLeft + plot_w << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"11\">1e" << d << "</text>\n";
    }
    // x ticks
    const int n_ticks = 7;
    for (int i = 0; i <= n_ticks; ++i) {
        const double x = x_min + (x_max - x_min) * i / n_ticks;
        out << "<text x=\"" << px(x) << "\" y=\"" << kMarginTop + plot_h + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << x << "</text>\n";
    }
    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\""
        << kHeight - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << x_label << "</text>\n"
        << "<text x=\"20\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
        << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

    // series polylines and legend
    double legend_y = kMarginTop + 10.0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.y[i] > 0.0)) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        const double lx = kMarginLeft + plot_w - 160.0;
        out << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\""
            << lx + 24 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\"/>\n"
            << "<text x=\"" << lx + 30 << "\" y=\"" << legend_y + 4
            << "\" font-size=\"12\">" << s.label << "</text>\n";
        legend_y += 18.0;
    }
    out << "</svg>\n";
}

} // namespace qkd
