#include "support/mc_area.hpp"

#include <algorithm>
#include <cmath>

namespace exo::test {

namespace {

// Union shape in a local frame: proximal disc of radius r4c centered at the
// origin; below it (negative y) either a triangle with base w4 tangent at
// y = -r4c (short regime) or a trapezoid of height la with parallel sides
// w4/w5 followed by a distal disc of radius r5c tangent to its far edge
// (extended regime). Tangent placement keeps the pieces disjoint, so the
// union area is the plain sum of the component areas.
struct UnionShape {
    double r4c = 0; // w4/2
    double r5c = 0; // w5/2
    double la = 0;  // trapezoid height (extended)
    double lc = 0;  // triangle height (short)
    bool extended = false;

    double x_half() const { return std::max(r4c, r5c); }
    double y_min() const {
        return extended ? -(r4c + la + 2.0 * r5c) : -(r4c + lc);
    }

    bool contains(double x, double y) const {
        if (x * x + y * y <= r4c * r4c)
            return true; // proximal disc
        if (extended) {
            if (y <= -r4c && y >= -(r4c + la)) {
                // trapezoid: width tapers linearly from w4 to w5
                const double t = (-y - r4c) / la;
                const double half = r4c + (r5c - r4c) * t;
                return std::abs(x) <= half;
            }
            const double cy = -(r4c + la + r5c);
            const double dx = x, dy = y - cy;
            return dx * dx + dy * dy <= r5c * r5c; // distal disc
        }
        if (y <= -r4c && y >= -(r4c + lc)) {
            const double t = (-y - r4c) / lc;
            const double half = r4c * (1.0 - t); // triangle to a point
            return std::abs(x) <= half;
        }
        return false;
    }
};

} // namespace

double mc_contact_area_mm2(const exo::geo::PouchGeometry& g, double h_mm, std::uint64_t samples,
                           std::uint64_t seed, exo::Exec exec) {
    const pouch::ContactState cs = pouch::contact_area(g, h_mm);

    UnionShape shape;
    shape.r4c = cs.w4_mm / 2.0;
    shape.r5c = cs.w5_mm / 2.0;
    shape.extended = cs.regime == pouch::ContactRegime::Extended;
    shape.la = g.la_mm;
    shape.lc = shape.extended ? 0.0 : cs.lc_mm;

    if (shape.r4c <= 0)
        return 0.0;

    const double x_half = shape.x_half();
    const double y_top = shape.r4c;
    const double y_bot = shape.y_min();
    const double bbox_area = 2.0 * x_half * (y_top - y_bot);

    std::uint64_t hits = 0;
    if (exec == exo::Exec::Parallel) {
        const std::int64_t n = static_cast<std::int64_t>(samples);
        std::int64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
        for (std::int64_t i = 0; i < n; ++i) {
            const double ux = exo::uniform01(seed, static_cast<std::uint64_t>(2 * i));
            const double uy = exo::uniform01(seed, static_cast<std::uint64_t>(2 * i + 1));
            const double x = -x_half + 2.0 * x_half * ux;
            const double y = y_bot + (y_top - y_bot) * uy;
            if (shape.contains(x, y))
                ++total;
        }
        hits = static_cast<std::uint64_t>(total);
    } else {
        for (std::uint64_t i = 0; i < samples; ++i) {
            const double ux = exo::uniform01(seed, 2 * i);
            const double uy = exo::uniform01(seed, 2 * i + 1);
            const double x = -x_half + 2.0 * x_half * ux;
            const double y = y_bot + (y_top - y_bot) * uy;
            if (shape.contains(x, y))
                ++hits;
        }
    }
    return bbox_area * static_cast<double>(hits) / static_cast<double>(samples);
}

} // namespace exo::test
