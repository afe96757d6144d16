#pragma once

#include <string>

namespace exo::geo {

// Trapezoidal pouch planform. Lengths are sealed-edge dimensions in mm;
// the derived contact radii follow from the inflated end circumference
// (r = l/pi), and the taper angle from the end-radius difference over the
// free span la.
struct PouchGeometry {
    double l4_mm = 0;   // upper edge length
    double l5_mm = 0;   // lower edge length
    double ld_mm = 0;   // pouch height
    double seal_mm = 0; // seal width

    // derived
    double r4_mm = 0;
    double r5_mm = 0;
    double la_mm = 0;
    double taper_rad = 0;

    PouchGeometry(double l4, double l5, double ld, double seal);

    bool untapered() const { return l4_mm == l5_mm; }
};

// Returns the pouch dimensions used throughout the examples and tests
// (l4 = 118, l5 = 88, ld = 180, seal = 7.5).
PouchGeometry reference_pouch();

// Width profile of an angled actuator: w1 at the top, w2 at the fold
// (x = lu from the top), w3 at the bottom (x = lu + lp). The pre-curve
// angles are carried as metadata only; they do not enter the volume model.
struct SpindleProfile {
    double lu_mm = 0;
    double lp_mm = 0;
    double w1_mm = 0;
    double w2_mm = 0;
    double w3_mm = 0;
    double seal1_mm = 0;
    double seal2_mm = 0;
    double theta_d_deg = 0; // designed external angle
    double theta_r_deg = 0; // actual internal angle
    double theta_f_deg = 0; // inflated external angle

    double length_mm() const { return lu_mm + lp_mm; }
    void validate() const; // throws domain_error on malformed profiles
};

SpindleProfile ucaa_preset();
SpindleProfile ssaa_preset();

// Piecewise-linear width at arc length x from the top; continuous, equal to
// w2 at x = lu. Throws domain_error outside [0, lu + lp].
double width_at(const SpindleProfile& p, double x_mm);

struct VolumeModelConfig {
    double fill_factor = 1.0;        // cross-section fill coefficient, (0, 1]
    double integration_step_mm = 1.0;
    void validate() const;
};

// Fill factor calibrated so the UCAA preset evaluates to 555 mL.
VolumeModelConfig default_volume_config();

// Inflated volume of the solid of revolution with local radius
// r(x) = (w(x) - 2*seal1)/pi, scaled by the fill factor. Closed-form
// frustum summation; this is the reference integrator.
double inflated_volume_ml(const SpindleProfile& p, const VolumeModelConfig& cfg);

// Step-integration variant (midpoint rule at cfg.integration_step_mm); must
// agree with the closed form within 0.1%.
double inflated_volume_numeric_ml(const SpindleProfile& p, const VolumeModelConfig& cfg);

// Fill factor that makes inflated_volume_ml(p, {k, ...}) equal target_ml.
double calibrate_fill_factor(const SpindleProfile& p, double target_ml);

// 100 * (v_ref - v_new) / v_ref. Throws domain_error for v_ref <= 0.
double volume_reduction_percent(double v_ref_ml, double v_new_ml);

} // namespace exo::geo
