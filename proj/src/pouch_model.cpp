#include "exo/pouch_model.hpp"

#include <cmath>
#include <limits>

#include "exo/errors.hpp"

namespace exo::pouch {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHeightClampMm = 1e-9; // kinematic round-off allowance above 2*r4
} // namespace

const char* to_string(ContactRegime r) {
    return r == ContactRegime::Short ? "short" : "extended";
}

namespace {

// Shared height validation/clamping for both entry points.
double checked_height(const geo::PouchGeometry& g, double h_mm) {
    if (h_mm < 0)
        throw domain_error("pouch: compression height must be >= 0");
    const double h_max = 2.0 * g.r4_mm;
    if (h_mm > h_max) {
        if (h_mm - h_max <= kHeightClampMm)
            return h_max;
        throw domain_error("pouch: compression height exceeds 2*r4, faces are separated");
    }
    return h_mm;
}

double cap_width(double r_mm, double h_mm) {
    const double s = r_mm * r_mm - h_mm * h_mm / 4.0;
    return s > 0 ? 2.0 * std::sqrt(s) : 0.0;
}

} // namespace

ContactWidths contact_widths(const geo::PouchGeometry& g, double h_mm) {
    if (g.untapered())
        throw domain_error("contact_widths: untapered pouch, lc is undefined (taper angle 0)");
    const double h = checked_height(g, h_mm);
    ContactWidths out;
    out.w4_mm = cap_width(g.r4_mm, h);
    out.w5_mm = h <= 2.0 * g.r5_mm ? cap_width(g.r5_mm, h) : 0.0;
    out.lc_mm = std::abs(g.r4_mm - h / 2.0) / std::tan(g.taper_rad);
    return out;
}

ContactState contact_area(const geo::PouchGeometry& g, double h_mm) {
    const double h = checked_height(g, h_mm);
    ContactState s;
    s.h_mm = h;
    s.w4_mm = cap_width(g.r4_mm, h);
    s.w5_mm = h <= 2.0 * g.r5_mm ? cap_width(g.r5_mm, h) : 0.0;
    if (g.untapered()) {
        // Taper limit: the contact band spans the whole pouch at any height,
        // so the extended decomposition applies throughout.
        s.lc_mm = std::numeric_limits<double>::infinity();
        s.a2_mm2 = s.w4_mm > 0 ? std::numeric_limits<double>::infinity() : 0.0;
        s.regime = ContactRegime::Extended;
    } else {
        s.lc_mm = std::abs(g.r4_mm - h / 2.0) / std::tan(g.taper_rad);
        s.a2_mm2 = s.lc_mm * s.w4_mm / 2.0;
        s.regime = s.lc_mm <= g.la_mm ? ContactRegime::Short : ContactRegime::Extended;
    }
    s.a1_mm2 = kPi * s.w4_mm * s.w4_mm / 4.0;
    s.a3_mm2 = kPi * s.w5_mm * s.w5_mm / 4.0;
    s.a4_mm2 = (s.w4_mm + s.w5_mm) * g.la_mm / 2.0;
    s.area_mm2 = s.regime == ContactRegime::Short ? s.a1_mm2 + s.a2_mm2
                                                  : s.a1_mm2 + s.a3_mm2 + s.a4_mm2;
    return s;
}

double pouch_force_n(const geo::PouchGeometry& g, double h_mm, double pressure_kpa) {
    if (pressure_kpa < 0)
        throw domain_error("pouch_force: pressure must be >= 0");
    return 0.001 * pressure_kpa * contact_area(g, h_mm).area_mm2;
}

std::vector<CurvePoint> force_height_curve(const geo::PouchGeometry& g, double pressure_kpa,
                                           double h_min_mm, double h_max_mm, int n) {
    if (pressure_kpa < 0)
        throw domain_error("force_height_curve: pressure must be >= 0");
    if (!(h_min_mm >= 0) || !(h_min_mm < h_max_mm) || h_max_mm > 2.0 * g.r4_mm + kHeightClampMm)
        throw domain_error("force_height_curve: need 0 <= h_min < h_max <= 2*r4");
    if (n < 2)
        throw domain_error("force_height_curve: need at least 2 samples");
    std::vector<CurvePoint> pts(static_cast<std::size_t>(n));
    const double dh = (h_max_mm - h_min_mm) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double h = i == n - 1 ? h_max_mm : h_min_mm + i * dh;
        CurvePoint& pt = pts[static_cast<std::size_t>(i)];
        pt.state = contact_area(g, h);
        pt.force_n = 0.001 * pressure_kpa * pt.state.area_mm2;
    }
    return pts;
}

} // namespace exo::pouch
