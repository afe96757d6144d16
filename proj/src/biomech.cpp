#include "exo/biomech.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "exo/errors.hpp"
#include "exo/io/csv.hpp"

namespace exo::biomech {

namespace {
constexpr double kGravity = 9.81;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
} // namespace

ArmModel anthropometric_arm(double body_mass_kg, double height_cm, double load_kg,
                            const AnthroCoefficients& coeffs) {
    if (!(body_mass_kg > 0) || !(height_cm > 0))
        throw domain_error("anthropometric_arm: body mass and height must be > 0");
    if (load_kg < 0)
        throw domain_error("anthropometric_arm: load must be >= 0");
    for (double f : {coeffs.arm_mass_fraction, coeffs.com_fraction, coeffs.length_fraction})
        if (!(f > 0) || !(f < 1))
            throw domain_error("anthropometric_arm: fractions must lie in (0, 1)");
    if (!(coeffs.load_lever_fraction > 0))
        throw domain_error("anthropometric_arm: load lever fraction must be > 0");
    ArmModel a;
    a.body_mass_kg = body_mass_kg;
    a.height_cm = height_cm;
    a.arm_mass_kg = coeffs.arm_mass_fraction * body_mass_kg;
    a.arm_length_m = coeffs.length_fraction * height_cm / 100.0;
    a.com_fraction = coeffs.com_fraction;
    a.load_mass_kg = load_kg;
    a.load_lever_m = coeffs.load_lever_fraction * a.arm_length_m;
    return a;
}

double gravity_torque_nm(const ArmModel& a, double theta_deg) {
    if (theta_deg < 0 || theta_deg > 180)
        throw domain_error("gravity_torque: elevation angle must lie in [0, 180] deg");
    const double lever_sum = a.arm_mass_kg * a.com_fraction * a.arm_length_m +
                             a.load_mass_kg * a.load_lever_m;
    return kGravity * std::sin(theta_deg * kDegToRad) * lever_sum;
}

double protocol_trajectory_deg(double t_s) {
    if (t_s < 0 || t_s > kProtocolDurationS)
        throw domain_error("protocol_trajectory: t outside [0, 18] s");
    if (t_s < 5.0)
        return 0.0;
    if (t_s < 9.0)
        return 90.0 * (t_s - 5.0) / 4.0;
    if (t_s < 14.0)
        return 90.0;
    return 90.0 * (18.0 - t_s) / 4.0;
}

// ------------------------------------------------------------------
// MomentSurface
// ------------------------------------------------------------------

MomentSurface::MomentSurface(std::vector<double> angles_deg, std::vector<double> pressures_kpa,
                             std::vector<double> moments_nm, std::string provenance)
    : angles_deg_(std::move(angles_deg)),
      pressures_kpa_(std::move(pressures_kpa)),
      moments_nm_(std::move(moments_nm)),
      provenance_(std::move(provenance)) {
    if (angles_deg_.empty() || pressures_kpa_.empty())
        throw domain_error("MomentSurface: axes must be nonempty");
    if (moments_nm_.size() != angles_deg_.size() * pressures_kpa_.size())
        throw domain_error("MomentSurface: grid is not rectangular");
    for (std::size_t i = 1; i < angles_deg_.size(); ++i)
        if (!(angles_deg_[i] > angles_deg_[i - 1]))
            throw domain_error("MomentSurface: angle axis must be strictly increasing");
    for (std::size_t j = 1; j < pressures_kpa_.size(); ++j)
        if (!(pressures_kpa_[j] > pressures_kpa_[j - 1]))
            throw domain_error("MomentSurface: pressure axis must be strictly increasing");
}

double MomentSurface::node(std::size_t i_angle, std::size_t j_pressure) const {
    return moments_nm_[i_angle * pressures_kpa_.size() + j_pressure];
}

namespace {

// Bracketing index and interpolation weight along one axis; exact at nodes.
struct AxisPos {
    std::size_t i0;
    double t;
    bool clamped;
};

AxisPos locate(const std::vector<double>& axis, double x) {
    AxisPos pos{0, 0.0, false};
    if (x <= axis.front()) {
        pos.clamped = x < axis.front();
        return pos;
    }
    if (x >= axis.back()) {
        pos.i0 = axis.size() >= 2 ? axis.size() - 2 : 0;
        pos.t = axis.size() >= 2 ? 1.0 : 0.0;
        pos.clamped = x > axis.back();
        return pos;
    }
    const auto it = std::upper_bound(axis.begin(), axis.end(), x);
    pos.i0 = static_cast<std::size_t>(it - axis.begin()) - 1;
    pos.t = (x - axis[pos.i0]) / (axis[pos.i0 + 1] - axis[pos.i0]);
    return pos;
}

} // namespace

MomentSurface::Query MomentSurface::sample(double angle_deg, double pressure_kpa,
                                           bool clamp) const {
    const AxisPos a = locate(angles_deg_, angle_deg);
    const AxisPos p = locate(pressures_kpa_, pressure_kpa);
    if ((a.clamped || p.clamped) && !clamp)
        throw domain_error("MomentSurface: query outside the grid with clamping disabled");
    Query q;
    q.clamped = a.clamped || p.clamped;
    const std::size_t a1 = std::min(a.i0 + 1, angles_deg_.size() - 1);
    const std::size_t p1 = std::min(p.i0 + 1, pressures_kpa_.size() - 1);
    const double m00 = node(a.i0, p.i0);
    const double m01 = node(a.i0, p1);
    const double m10 = node(a1, p.i0);
    const double m11 = node(a1, p1);
    const double low = m00 + (m01 - m00) * p.t;
    const double high = m10 + (m11 - m10) * p.t;
    q.moment_nm = low + (high - low) * a.t;
    return q;
}

MomentSurface MomentSurface::scaled(double factor) const {
    std::vector<double> scaled_moments = moments_nm_;
    for (double& m : scaled_moments)
        m *= factor;
    return MomentSurface(angles_deg_, pressures_kpa_, std::move(scaled_moments), provenance_);
}

MomentSurface MomentSurface::from_csv_file(const std::string& path) {
    const io::Table t = io::read_csv_file(path);
    if (t.header != std::vector<std::string>{"angle_deg", "pressure_kpa", "moment_nm"})
        throw io_error("MomentSurface: expected header angle_deg,pressure_kpa,moment_nm in " +
                       path);
    std::string provenance = "unspecified";
    for (const std::string& c : t.comments) {
        const std::string tag = "provenance:";
        const auto pos = c.find(tag);
        if (pos != std::string::npos) {
            provenance = c.substr(pos + tag.size());
            while (!provenance.empty() && provenance.front() == ' ')
                provenance.erase(provenance.begin());
        }
    }
    std::set<double> angle_set, pressure_set;
    std::map<std::pair<double, double>, double> cells;
    for (const auto& row : t.rows) {
        if (row.size() != 3)
            throw io_error("MomentSurface: malformed row in " + path);
        const double ang = io::parse_num(row[0]);
        const double prs = io::parse_num(row[1]);
        const double mom = io::parse_num(row[2]);
        angle_set.insert(ang);
        pressure_set.insert(prs);
        if (!cells.emplace(std::make_pair(ang, prs), mom).second)
            throw io_error("MomentSurface: duplicate grid node in " + path);
    }
    std::vector<double> angles(angle_set.begin(), angle_set.end());
    std::vector<double> pressures(pressure_set.begin(), pressure_set.end());
    std::vector<double> moments;
    moments.reserve(angles.size() * pressures.size());
    for (double ang : angles)
        for (double prs : pressures) {
            const auto it = cells.find({ang, prs});
            if (it == cells.end())
                throw io_error("MomentSurface: grid is not rectangular in " + path);
            moments.push_back(it->second);
        }
    return MomentSurface(std::move(angles), std::move(pressures), std::move(moments),
                         std::move(provenance));
}

// ------------------------------------------------------------------
// Assistance simulation
// ------------------------------------------------------------------

void PressureSchedule::validate() const {
    if (t_s.size() != p_kpa.size())
        throw domain_error("PressureSchedule: time and pressure lists differ in length");
    for (std::size_t i = 1; i < t_s.size(); ++i)
        if (!(t_s[i] > t_s[i - 1]))
            throw domain_error("PressureSchedule: knot times must be strictly increasing");
    for (double p : p_kpa)
        if (p < 0)
            throw domain_error("PressureSchedule: pressures must be >= 0");
}

double PressureSchedule::at(double t) const {
    if (t_s.empty() || t < t_s.front())
        return 0.0;
    const auto it = std::upper_bound(t_s.begin(), t_s.end(), t);
    const auto idx = static_cast<std::size_t>(it - t_s.begin()) - 1;
    return p_kpa[idx];
}

std::vector<AssistSample> assistance_profile(const ArmModel& a, const MomentSurface& s,
                                             const PressureSchedule& schedule, double dt_s,
                                             bool clamp) {
    schedule.validate();
    if (!(dt_s > 0))
        throw domain_error("assistance_profile: dt must be > 0");
    const auto n = static_cast<std::size_t>(std::llround(kProtocolDurationS / dt_s));
    std::vector<AssistSample> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        AssistSample smp;
        smp.t_s = std::min(i * dt_s, kProtocolDurationS);
        smp.angle_deg = protocol_trajectory_deg(smp.t_s);
        smp.pressure_kpa = schedule.at(smp.t_s);
        smp.gravity_nm = gravity_torque_nm(a, smp.angle_deg);
        const MomentSurface::Query q = s.sample(smp.angle_deg, smp.pressure_kpa, clamp);
        smp.actuator_nm = q.moment_nm;
        smp.clamped = q.clamped;
        smp.residual_nm = std::max(smp.gravity_nm - smp.actuator_nm, 0.0);
        if (smp.gravity_nm > 0)
            smp.assist_fraction = smp.actuator_nm / smp.gravity_nm;
        out.push_back(smp);
    }
    return out;
}

} // namespace exo::biomech
