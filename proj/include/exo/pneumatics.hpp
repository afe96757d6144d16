#pragma once

#include <optional>
#include <span>
#include <vector>

#include "exo/parallel.hpp"

namespace exo::pneumo {

// Lumped fill/vent circuit: proportional regulator modeled as a supply-side
// orifice plus a vent-side orifice with independent sonic conductances, an
// ideal setpoint clamp (no valve dynamics), and a rigid actuator volume
// filled isothermally. Conductances are the calibration knobs; everything
// else is geometry or ambient state.
struct PneumaticCircuit {
    double supply_kpa = 130.0;     // gauge supply pressure
    double atm_kpa = 101.325;      // absolute ambient pressure
    double tank_l = 0.75;          // buffer tank volume
    double act_ml = 555.0;         // actuator volume
    double c_fill = 1.2;           // fill-path conductance, std L/(s*bar)
    double c_vent = 0.18;          // vent-path conductance, std L/(s*bar)
    double b_crit = 0.5;           // critical pressure ratio
    double temperature_k = 293.0;

    void validate() const; // throws domain_error
};

// Two-regime compressible orifice flow in standard L/s: choked for
// p_down/p_up <= b_crit, elliptic subsonic above. Pressures are absolute
// kPa; conductance is std L/(s*bar). Throws domain_error for reversed
// pressures (the caller selects the fill vs. vent path).
double orifice_flow_slps(double up_kpa_abs, double down_kpa_abs, double conductance,
                         double b_crit);

struct StepResult {
    std::vector<double> t_s;
    std::vector<double> p_kpa;
    std::vector<double> ref_kpa;
    std::optional<double> rise_time_10_90_s;
    std::optional<double> fall_time_90_10_s;
    bool settled = false;
};

// Step to p_ref at t = 0, release to 0 at duration/2. Explicit fixed-step
// integration of the slew-limited setpoint tracking model with a
// step-halving convergence check; throws computation_error when dt is too
// coarse to integrate the fastest slew or when halving shifts the extracted
// times by more than 1%. A zero-amplitude step returns a flagged result
// with empty rise/fall times rather than NaNs.
StepResult step_response(const PneumaticCircuit& c, double p_ref_kpa,
                         double duration_s = 20.0, double dt_s = 1e-3);

// Tank discharging into the actuator through the fill orifice with no
// resupply. Standard-condition air volume is conserved by construction;
// tests assert the bookkeeping.
struct ClosedFillResult {
    std::vector<double> t_s;
    std::vector<double> tank_kpa; // gauge
    std::vector<double> act_kpa;  // gauge
};

ClosedFillResult closed_fill(const PneumaticCircuit& c, double duration_s, double dt_s = 1e-3);

struct BodePoint {
    double freq_hz = 0;
    double magnitude_db = 0;
};

// Steady-state magnitude response to p_ref(t) = mean + amp*sin(2*pi*f*t),
// one point per requested frequency. The transient is discarded (7 cycles)
// and the amplitude measured over the following 5; a drifting amplitude
// raises computation_error. Magnitude never exceeds 0 dB for this model.
std::vector<BodePoint> frequency_response(const PneumaticCircuit& c, double mean_kpa,
                                          double amp_kpa, std::span<const double> freqs_hz,
                                          Exec exec = Exec::Parallel);

// -3 dB crossing by log-linear interpolation; assumes the monotone response
// of the single-volume model. Throws computation_error when the response
// does not span the crossing.
double cutoff_minus3db_hz(std::span<const BodePoint> response);

// Scales c_fill and c_vent jointly (fixed ratio) so the -3 dB cutoff at the
// given operating point lands on target_cutoff_hz. Exact in one step up to
// interpolation error; a second pass verifies.
PneumaticCircuit calibrate_bandwidth(PneumaticCircuit c, double mean_kpa, double amp_kpa,
                                     double target_cutoff_hz);

// Log-spaced frequency grid helper for sweeps.
std::vector<double> log_spaced(double f_min_hz, double f_max_hz, int n);

} // namespace exo::pneumo
