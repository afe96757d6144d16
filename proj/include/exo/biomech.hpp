#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace exo::biomech {

// Anthropometric coefficients are configuration, not measured facts; the
// shipped defaults live in data/arm_default.cfg and are user-editable.
struct AnthroCoefficients {
    double arm_mass_fraction = 0.05;  // whole-arm mass / body mass
    double com_fraction = 0.45;       // arm COM position / arm length
    double length_fraction = 0.33;    // arm length / body height
    double load_lever_fraction = 1.0; // hand lever / arm length
};

struct ArmModel {
    double body_mass_kg = 0;
    double height_cm = 0;
    double arm_mass_kg = 0;
    double arm_length_m = 0;
    double com_fraction = 0;
    double load_mass_kg = 0;
    double load_lever_m = 0;
};

ArmModel anthropometric_arm(double body_mass_kg, double height_cm, double load_kg,
                            const AnthroCoefficients& coeffs = {});

// Static gravity torque about the shoulder at elevation theta:
// g * sin(theta) * (arm_mass * com_fraction * arm_length + load * lever).
double gravity_torque_nm(const ArmModel& a, double theta_deg);

// Study repetition profile: 5 s rest, 4 s ramp to 90 deg, 5 s hold,
// 4 s ramp back down; 18 s total, piecewise linear and continuous.
inline constexpr double kProtocolDurationS = 18.0;
double protocol_trajectory_deg(double t_s);

// Rectangular (angle x pressure) moment grid with bilinear interpolation.
// Queries outside the grid clamp to the boundary and set the clamped flag,
// or throw when clamping is disabled. The provenance tag travels with the
// data file ("# provenance: ..." comment).
class MomentSurface {
public:
    MomentSurface(std::vector<double> angles_deg, std::vector<double> pressures_kpa,
                  std::vector<double> moments_nm, std::string provenance = "unspecified");

    struct Query {
        double moment_nm = 0;
        bool clamped = false;
    };

    Query sample(double angle_deg, double pressure_kpa, bool clamp = true) const;

    const std::vector<double>& angles() const { return angles_deg_; }
    const std::vector<double>& pressures() const { return pressures_kpa_; }
    double node(std::size_t i_angle, std::size_t j_pressure) const;
    const std::string& provenance() const { return provenance_; }

    MomentSurface scaled(double factor) const;

    static MomentSurface from_csv_file(const std::string& path);

private:
    std::vector<double> angles_deg_;
    std::vector<double> pressures_kpa_;
    std::vector<double> moments_nm_; // row-major, angle-major
    std::string provenance_;
};

// Piecewise-constant (previous-value hold) pressure schedule; pressure is 0
// before the first knot.
struct PressureSchedule {
    std::vector<double> t_s;
    std::vector<double> p_kpa;

    double at(double t) const;
    void validate() const;
};

struct AssistSample {
    double t_s = 0;
    double angle_deg = 0;
    double pressure_kpa = 0;
    double gravity_nm = 0;
    double actuator_nm = 0;
    double residual_nm = 0;
    std::optional<double> assist_fraction; // empty where gravity torque is 0
    bool clamped = false;
};

// Runs the protocol trajectory against the schedule and surface;
// residual = max(M_g - M_act, 0).
std::vector<AssistSample> assistance_profile(const ArmModel& a, const MomentSurface& s,
                                             const PressureSchedule& schedule,
                                             double dt_s = 0.02, bool clamp = true);

} // namespace exo::biomech
