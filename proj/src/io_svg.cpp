#include "exo/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "exo/errors.hpp"
#include "exo/io/csv.hpp"

namespace exo::io::svg {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 500;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo == hi) {
            lo -= 1.0;
            hi += 1.0;
        }
    }
};

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

std::vector<double> threshold_crossings(const Series& s, double level) {
    std::vector<double> out;
    for (std::size_t i = 1; i < s.points.size(); ++i) {
        const auto [x0, y0] = s.points[i - 1];
        const auto [x1, y1] = s.points[i];
        const bool up = y0 < level && y1 >= level;
        const bool down = y0 > level && y1 <= level;
        if (up || down)
            out.push_back(y1 == y0 ? x1 : x0 + (level - y0) / (y1 - y0) * (x1 - x0));
    }
    return out;
}

std::string render_line_plot(std::span<const Series> series, const PlotStyle& style) {
    if (series.empty())
        throw domain_error("render_line_plot: no series");
    for (const Series& s : series)
        if (s.points.empty())
            throw domain_error("render_line_plot: empty series '" + s.name + "'");

    Range xr, yr;
    for (const Series& s : series)
        for (const auto& [x, y] : s.points) {
            xr.add(x);
            yr.add(y);
        }
    if (style.annotate_rise_thresholds) {
        yr.add(0.1 * style.threshold_ref);
        yr.add(0.9 * style.threshold_ref);
    }
    xr.pad();
    yr.pad();

    const double px0 = kMarginLeft;
    const double px1 = kWidth - kMarginRight;
    const double py0 = kHeight - kMarginBottom;
    const double py1 = kMarginTop;
    auto map_x = [&](double x) { return px0 + (x - xr.lo) / (xr.hi - xr.lo) * (px1 - px0); };
    auto map_y = [&](double y) { return py0 + (y - yr.lo) / (yr.hi - yr.lo) * (py1 - py0); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    // axes
    os << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px1 << "\" y2=\"" << py0
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px0 << "\" y2=\"" << py1
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << kHeight - 12
       << "\" text-anchor=\"middle\" font-size=\"14\">" << style.x_label << "</text>\n";
    os << "<text x=\"18\" y=\"" << (py0 + py1) / 2
       << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
       << (py0 + py1) / 2 << ")\">" << style.y_label << "</text>\n";
    os << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"24\" text-anchor=\"middle\" "
       << "font-size=\"16\">" << style.title << "</text>\n";
    // extent labels
    os << "<text x=\"" << px0 << "\" y=\"" << py0 + 18 << "\" font-size=\"12\">"
       << format_num(xr.lo) << "</text>\n";
    os << "<text x=\"" << px1 << "\" y=\"" << py0 + 18
       << "\" text-anchor=\"end\" font-size=\"12\">" << format_num(xr.hi) << "</text>\n";
    os << "<text x=\"" << px0 - 6 << "\" y=\"" << py0 << "\" text-anchor=\"end\" "
       << "font-size=\"12\">" << format_num(yr.lo) << "</text>\n";
    os << "<text x=\"" << px0 - 6 << "\" y=\"" << py1 + 4 << "\" text-anchor=\"end\" "
       << "font-size=\"12\">" << format_num(yr.hi) << "</text>\n";

    if (style.annotate_rise_thresholds) {
        for (double frac : {0.1, 0.9}) {
            const double level = frac * style.threshold_ref;
            const double y = map_y(level);
            os << "<line x1=\"" << px0 << "\" y1=\"" << fmt_px(y) << "\" x2=\"" << px1
               << "\" y2=\"" << fmt_px(y) << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
            for (double x : threshold_crossings(series[0], level)) {
                const double px = map_x(x);
                os << "<line x1=\"" << fmt_px(px) << "\" y1=\"" << py0 << "\" x2=\"" << fmt_px(px)
                   << "\" y2=\"" << py1 << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"2 3\"/>\n";
            }
        }
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        if (s.points.size() == 1) {
            os << "<circle cx=\"" << fmt_px(map_x(s.points[0].first)) << "\" cy=\""
               << fmt_px(map_y(s.points[0].second)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
               << "points=\"";
            for (const auto& [x, y] : s.points)
                os << fmt_px(map_x(x)) << "," << fmt_px(map_y(y)) << " ";
            os << "\"/>\n";
        }
        os << "<text x=\"" << px1 - 8 << "\" y=\"" << py1 + 16 + 16 * static_cast<double>(si)
           << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << s.name
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_plot_file(const std::string& path, std::span<const Series> series,
                     const PlotStyle& style) {
    std::ofstream f(path);
    if (!f)
        throw io_error("cannot write plot file " + path);
    f << render_line_plot(series, style);
}

} // namespace exo::io::svg
