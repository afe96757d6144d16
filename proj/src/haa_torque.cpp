#include "exo/haa_torque.hpp"

#include <cmath>

#include "exo/errors.hpp"

namespace exo::haa {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
} // namespace

HaaAssembly::HaaAssembly(geo::PouchGeometry g, double offset) : pouch(g), offset_mm(offset) {
    if (offset < 0)
        throw domain_error("HaaAssembly: sewing offset must be >= 0");
    center_distance_mm = pouch.r5_mm + offset_mm;
}

HaaAssembly reference_assembly() { return HaaAssembly(geo::reference_pouch()); }

BendState bend_kinematics(const HaaAssembly& a, double beta_deg) {
    if (beta_deg < 0 || beta_deg >= 360)
        throw domain_error("bend_kinematics: beta must lie in [0, 360) deg");
    const double q = beta_deg / 4.0 * kDegToRad;
    BendState s;
    s.beta_deg = beta_deg;
    s.h_mm = 2.0 * a.center_distance_mm * std::sin(q);
    s.moment_arm_mm = a.center_distance_mm * std::cos(q);
    return s;
}

double haa_torque_nm(const HaaAssembly& a, double beta_deg, double pressure_kpa,
                     double max_pressure_kpa) {
    if (pressure_kpa < 0 || pressure_kpa > max_pressure_kpa)
        throw domain_error("haa_torque: pressure outside [0, max] kPa");
    const BendState bend = bend_kinematics(a, beta_deg);
    const double force = pouch::pouch_force_n(a.pouch, bend.h_mm, pressure_kpa);
    return force * bend.moment_arm_mm * 1e-3;
}

std::vector<TorquePoint> torque_angle_curve(const HaaAssembly& a, double pressure_kpa,
                                            double beta_min_deg, double beta_max_deg, int n,
                                            double max_pressure_kpa) {
    if (pressure_kpa < 0 || pressure_kpa > max_pressure_kpa)
        throw domain_error("torque_angle_curve: pressure outside [0, max] kPa");
    if (!(beta_min_deg < beta_max_deg) || beta_min_deg < 0 || beta_max_deg >= 360)
        throw domain_error("torque_angle_curve: need 0 <= beta_min < beta_max < 360");
    if (n < 2)
        throw domain_error("torque_angle_curve: need at least 2 samples");
    std::vector<TorquePoint> pts(static_cast<std::size_t>(n));
    const double db = (beta_max_deg - beta_min_deg) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double beta = i == n - 1 ? beta_max_deg : beta_min_deg + i * db;
        TorquePoint& pt = pts[static_cast<std::size_t>(i)];
        pt.bend = bend_kinematics(a, beta);
        const pouch::ContactState cs = pouch::contact_area(a.pouch, pt.bend.h_mm);
        pt.regime = cs.regime;
        pt.force_n = 0.001 * pressure_kpa * cs.area_mm2;
        pt.torque_nm = pt.force_n * pt.bend.moment_arm_mm * 1e-3;
    }
    return pts;
}

} // namespace exo::haa
