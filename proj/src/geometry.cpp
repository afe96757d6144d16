#include "exo/geometry.hpp"

#include <cmath>

#include "exo/errors.hpp"

namespace exo::geo {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kUcaaVolumeMl = 555.0; // calibration target for the fill factor
} // namespace

// ------------------------------------------------------------------
// PouchGeometry
// ------------------------------------------------------------------

PouchGeometry::PouchGeometry(double l4, double l5, double ld, double seal)
    : l4_mm(l4), l5_mm(l5), ld_mm(ld), seal_mm(seal) {
    if (!(l4 > 0) || !(l5 > 0) || !(ld > 0))
        throw domain_error("PouchGeometry: edge lengths and height must be > 0");
    if (seal < 0)
        throw domain_error("PouchGeometry: seal width must be >= 0");
    r4_mm = l4 / kPi;
    r5_mm = l5 / kPi;
    la_mm = ld - 2.0 * seal - r4_mm - r5_mm;
    if (!(la_mm > 0))
        throw domain_error("PouchGeometry: free span la = ld - 2*seal - r4 - r5 must be > 0");
    taper_rad = std::atan(std::abs(r4_mm - r5_mm) / la_mm);
}

PouchGeometry reference_pouch() { return PouchGeometry(118.0, 88.0, 180.0, 7.5); }

// ------------------------------------------------------------------
// SpindleProfile
// ------------------------------------------------------------------

void SpindleProfile::validate() const {
    if (!(lu_mm > 0) || !(lp_mm > 0))
        throw domain_error("SpindleProfile: segment lengths must be > 0");
    if (!(w1_mm > 0) || !(w2_mm > 0) || !(w3_mm > 0))
        throw domain_error("SpindleProfile: widths must be > 0");
    if (w1_mm > w2_mm || w3_mm > w2_mm)
        throw domain_error("SpindleProfile: fold width w2 must be the widest (w1 <= w2, w3 <= w2)");
    if (seal1_mm < 0 || seal2_mm < 0)
        throw domain_error("SpindleProfile: seal widths must be >= 0");
    for (double a : {theta_d_deg, theta_r_deg, theta_f_deg})
        if (!(a > 0) || !(a < 360))
            throw domain_error("SpindleProfile: angles must lie in (0, 360) deg");
}

SpindleProfile ucaa_preset() {
    SpindleProfile p;
    p.lu_mm = 162;
    p.lp_mm = 192;
    p.w1_mm = 90;
    p.w2_mm = 90;
    p.w3_mm = 90;
    p.seal1_mm = 7.5;
    p.seal2_mm = 10;
    p.theta_d_deg = 155;
    p.theta_r_deg = 155;
    p.theta_f_deg = 151;
    return p;
}

SpindleProfile ssaa_preset() {
    SpindleProfile p;
    p.lu_mm = 162;
    p.lp_mm = 192;
    p.w1_mm = 52;
    p.w2_mm = 90;
    p.w3_mm = 56.5;
    p.seal1_mm = 7.5;
    p.seal2_mm = 10;
    p.theta_d_deg = 150;
    p.theta_r_deg = 177;
    p.theta_f_deg = 148;
    return p;
}

double width_at(const SpindleProfile& p, double x_mm) {
    p.validate();
    if (x_mm < 0 || x_mm > p.length_mm())
        throw domain_error("width_at: x outside [0, lu + lp]");
    if (x_mm <= p.lu_mm) {
        const double t = x_mm / p.lu_mm;
        return p.w1_mm + (p.w2_mm - p.w1_mm) * t;
    }
    const double t = (x_mm - p.lu_mm) / p.lp_mm;
    return p.w2_mm + (p.w3_mm - p.w2_mm) * t;
}

// ------------------------------------------------------------------
// Volume model
// ------------------------------------------------------------------

void VolumeModelConfig::validate() const {
    if (!(fill_factor > 0) || fill_factor > 1)
        throw domain_error("VolumeModelConfig: fill factor must be in (0, 1]");
    if (!(integration_step_mm > 0))
        throw domain_error("VolumeModelConfig: integration step must be > 0");
}

namespace {

double inflated_radius_mm(const SpindleProfile& p, double w_mm) {
    const double effective = w_mm - 2.0 * p.seal1_mm;
    if (!(effective > 0))
        throw domain_error("inflated_volume: width <= 2*seal1 somewhere, degenerate geometry");
    return effective / kPi;
}

// Exact volume of a conical frustum with linearly varying radius.
double frustum_mm3(double r_a, double r_b, double length_mm) {
    return kPi * length_mm / 3.0 * (r_a * r_a + r_a * r_b + r_b * r_b);
}

} // namespace

double inflated_volume_ml(const SpindleProfile& p, const VolumeModelConfig& cfg) {
    p.validate();
    cfg.validate();
    const double r1 = inflated_radius_mm(p, p.w1_mm);
    const double r2 = inflated_radius_mm(p, p.w2_mm);
    const double r3 = inflated_radius_mm(p, p.w3_mm);
    const double mm3 = frustum_mm3(r1, r2, p.lu_mm) + frustum_mm3(r2, r3, p.lp_mm);
    return cfg.fill_factor * mm3 / 1000.0;
}

double inflated_volume_numeric_ml(const SpindleProfile& p, const VolumeModelConfig& cfg) {
    p.validate();
    cfg.validate();
    // Midpoint rule per segment; segments are integrated separately so the
    // kink at x = lu never straddles a step.
    double mm3 = 0.0;
    const double segs[2][2] = {{0.0, p.lu_mm}, {p.lu_mm, p.length_mm()}};
    for (const auto& seg : segs) {
        const double len = seg[1] - seg[0];
        const int n = std::max(1, static_cast<int>(std::ceil(len / cfg.integration_step_mm)));
        const double dx = len / n;
        for (int i = 0; i < n; ++i) {
            const double x = seg[0] + (i + 0.5) * dx;
            const double r = inflated_radius_mm(p, width_at(p, x));
            mm3 += kPi * r * r * dx;
        }
    }
    return cfg.fill_factor * mm3 / 1000.0;
}

double calibrate_fill_factor(const SpindleProfile& p, double target_ml) {
    if (!(target_ml > 0))
        throw domain_error("calibrate_fill_factor: target volume must be > 0");
    VolumeModelConfig unit;
    unit.fill_factor = 1.0;
    return target_ml / inflated_volume_ml(p, unit);
}

VolumeModelConfig default_volume_config() {
    VolumeModelConfig cfg;
    cfg.fill_factor = calibrate_fill_factor(ucaa_preset(), kUcaaVolumeMl);
    return cfg;
}

double volume_reduction_percent(double v_ref_ml, double v_new_ml) {
    if (!(v_ref_ml > 0))
        throw domain_error("volume_reduction: reference volume must be > 0");
    return 100.0 * (v_ref_ml - v_new_ml) / v_ref_ml;
}

} // namespace exo::geo
