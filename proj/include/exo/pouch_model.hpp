#pragma once

#include <string>
#include <vector>

#include "exo/geometry.hpp"

namespace exo::pouch {

// Contact regime of a compressed pouch. The intermediate contact length lc
// grows as compression deepens; once it exceeds the free span la the distal
// cap touches down and the contact patch switches from the short (cap +
// triangle) decomposition to the extended (two caps + trapezoid) one.
enum class ContactRegime { Short, Extended };

const char* to_string(ContactRegime r);

// Full contact-patch decomposition at compression height h.
//   a1 = proximal cap, a2 = triangular section, a3 = distal cap,
//   a4 = trapezoidal section; area = a1+a2 (Short) or a1+a3+a4 (Extended).
// For untapered pouches lc is unbounded (stored as +inf) and the regime is
// always Extended; a2 degenerates with it.
struct ContactState {
    double h_mm = 0;
    double w4_mm = 0; // upper contact width
    double w5_mm = 0; // lower contact width
    double lc_mm = 0; // intermediate contact length
    ContactRegime regime = ContactRegime::Extended;
    double a1_mm2 = 0;
    double a2_mm2 = 0;
    double a3_mm2 = 0;
    double a4_mm2 = 0;
    double area_mm2 = 0;
};

struct ContactWidths {
    double w4_mm = 0;
    double w5_mm = 0;
    double lc_mm = 0;
};

// Contact widths at compression height h:
//   w4 = 2*sqrt(r4^2 - h^2/4)
//   w5 = 2*sqrt(r5^2 - h^2/4) for h <= 2*r5, else 0
//   lc = |r4 - h/2| / tan(taper)
// h within 1e-9 mm above 2*r4 is clamped; anything further is a domain
// error, as is a negative h. Untapered geometry (taper = 0) is a domain
// error here because lc is undefined; contact_area handles that case.
ContactWidths contact_widths(const geo::PouchGeometry& g, double h_mm);

// Contact-patch area decomposition at height h. All four components are
// populated so both regime formulas can be reconstructed from the result.
ContactState contact_area(const geo::PouchGeometry& g, double h_mm);

// F = 0.001 * P * A(h); kPa * mm^2 -> N. Exactly linear in pressure.
double pouch_force_n(const geo::PouchGeometry& g, double h_mm, double pressure_kpa);

struct CurvePoint {
    ContactState state;
    double force_n = 0;
};

// n uniformly spaced samples of the force-height relation on [h_min, h_max].
std::vector<CurvePoint> force_height_curve(const geo::PouchGeometry& g, double pressure_kpa,
                                           double h_min_mm, double h_max_mm, int n);

} // namespace exo::pouch
