#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace exo::io::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct PlotStyle {
    std::string title;
    std::string x_label;
    std::string y_label;
    // Draw horizontal guides at 10%/90% of threshold_ref and vertical lines
    // where the first series crosses them (step-response annotation).
    bool annotate_rise_thresholds = false;
    double threshold_ref = 0;
};

// Deterministic standalone SVG: fixed viewport, no timestamps or ids, so
// identical inputs render byte-identical files. Throws domain_error for an
// empty series list.
std::string render_line_plot(std::span<const Series> series, const PlotStyle& style);

void write_plot_file(const std::string& path, std::span<const Series> series,
                     const PlotStyle& style);

// First upward/downward crossing times of `level`, linearly interpolated.
// Used by the plot layer to recompute threshold positions from the series
// itself.
std::vector<double> threshold_crossings(const Series& s, double level);

} // namespace exo::io::svg
