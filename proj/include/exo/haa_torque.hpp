#pragma once

#include <vector>

#include "exo/pouch_model.hpp"

namespace exo::haa {

// Two pouch motors sewn together along one side. The rotation center sits
// at distance l_O1O2 = r5 + d from the pouch center, where d is the
// inter-center sewing offset.
struct HaaAssembly {
    geo::PouchGeometry pouch;
    double offset_mm = 7.5;
    double center_distance_mm = 0; // l_O1O2, derived

    explicit HaaAssembly(geo::PouchGeometry g, double offset = 7.5);
};

HaaAssembly reference_assembly();

// Bend state at assembly angle beta (quarter-angle kinematics):
//   h     = 2 * l_O1O2 * sin(beta/4)
//   l_arm =     l_O1O2 * cos(beta/4)
// so l_arm^2 + (h/2)^2 = l_O1O2^2 identically.
struct BendState {
    double beta_deg = 0;
    double h_mm = 0;
    double moment_arm_mm = 0;
};

// Throws domain_error for beta outside [0, 360).
BendState bend_kinematics(const HaaAssembly& a, double beta_deg);

// Default pressure validation ceiling (supply limit); overridable per call.
inline constexpr double kDefaultMaxPressureKpa = 130.0;

// M = F(h(beta), P) * l_arm(beta) * 1e-3, in N*m. Linear in P at fixed beta.
// Throws domain_error when h(beta) exceeds the pouch contact range or when
// P is outside [0, max_pressure].
double haa_torque_nm(const HaaAssembly& a, double beta_deg, double pressure_kpa,
                     double max_pressure_kpa = kDefaultMaxPressureKpa);

struct TorquePoint {
    BendState bend;
    pouch::ContactRegime regime = pouch::ContactRegime::Extended;
    double force_n = 0;
    double torque_nm = 0;
};

std::vector<TorquePoint> torque_angle_curve(const HaaAssembly& a, double pressure_kpa,
                                            double beta_min_deg, double beta_max_deg, int n,
                                            double max_pressure_kpa = kDefaultMaxPressureKpa);

} // namespace exo::haa
