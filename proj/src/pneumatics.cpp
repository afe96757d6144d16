#include "exo/pneumatics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "exo/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exo::pneumo {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
} // namespace

void PneumaticCircuit::validate() const {
    if (!(supply_kpa > 0))
        throw domain_error("PneumaticCircuit: supply pressure must be > 0");
    if (!(atm_kpa > 0))
        throw domain_error("PneumaticCircuit: ambient pressure must be > 0");
    if (!(tank_l > 0) || !(act_ml > 0))
        throw domain_error("PneumaticCircuit: volumes must be > 0");
    if (!(c_fill > 0) || !(c_vent > 0))
        throw domain_error("PneumaticCircuit: conductances must be > 0");
    if (!(b_crit > 0) || !(b_crit < 1))
        throw domain_error("PneumaticCircuit: critical pressure ratio must lie in (0, 1)");
    if (!(temperature_k > 0))
        throw domain_error("PneumaticCircuit: temperature must be > 0");
}

double orifice_flow_slps(double up_kpa_abs, double down_kpa_abs, double conductance,
                         double b_crit) {
    if (down_kpa_abs < 0 || up_kpa_abs < down_kpa_abs)
        throw domain_error("orifice_flow: need p_up >= p_down >= 0");
    if (up_kpa_abs == down_kpa_abs)
        return 0.0;
    const double up_bar = up_kpa_abs / 100.0;
    const double ratio = down_kpa_abs / up_kpa_abs;
    if (ratio <= b_crit)
        return conductance * up_bar; // choked
    const double x = (ratio - b_crit) / (1.0 - b_crit);
    return conductance * up_bar * std::sqrt(std::max(0.0, 1.0 - x * x));
}

// ------------------------------------------------------------------
// Slew-limited setpoint tracking
// ------------------------------------------------------------------

namespace {

struct Rates {
    const PneumaticCircuit& c;

    // kPa/s the fill path can add at actuator gauge pressure p.
    double up(double p_kpa) const {
        const double q = orifice_flow_slps(c.supply_kpa + c.atm_kpa, p_kpa + c.atm_kpa,
                                           c.c_fill, c.b_crit);
        return c.atm_kpa * q / (c.act_ml / 1000.0);
    }

    // kPa/s the vent path can remove at actuator gauge pressure p.
    double down(double p_kpa) const {
        if (p_kpa <= 0)
            return 0.0;
        const double q = orifice_flow_slps(p_kpa + c.atm_kpa, c.atm_kpa, c.c_vent, c.b_crit);
        return c.atm_kpa * q / (c.act_ml / 1000.0);
    }
};

// One Euler step of the regulator model: move toward the setpoint, limited
// by the available path rate, never past the setpoint.
double track_step(const Rates& r, double p, double target, double dt) {
    if (target > p)
        return std::min(p + dt * r.up(p), target);
    if (target < p)
        return std::max(p - dt * r.down(p), std::max(target, 0.0));
    return p;
}

struct StepTimes {
    std::optional<double> rise, fall;
    bool settled = false;
};

double interp_crossing(double t0, double p0, double t1, double p1, double level) {
    if (p1 == p0)
        return t1;
    return t0 + (level - p0) / (p1 - p0) * (t1 - t0);
}

StepTimes extract_step_times(const std::vector<double>& t, const std::vector<double>& p,
                             double p_ref, double t_release) {
    StepTimes out;
    const double lo = 0.1 * p_ref;
    const double hi = 0.9 * p_ref;
    std::optional<double> t_lo_up, t_hi_up, t_hi_down, t_lo_down;
    bool reached_ref = false;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const bool rising_phase = t[i] <= t_release;
        if (rising_phase) {
            if (!t_lo_up && p[i - 1] < lo && p[i] >= lo)
                t_lo_up = interp_crossing(t[i - 1], p[i - 1], t[i], p[i], lo);
            if (!t_hi_up && p[i - 1] < hi && p[i] >= hi)
                t_hi_up = interp_crossing(t[i - 1], p[i - 1], t[i], p[i], hi);
            if (p[i] >= 0.99 * p_ref)
                reached_ref = true;
        } else {
            if (!t_hi_down && p[i - 1] > hi && p[i] <= hi)
                t_hi_down = interp_crossing(t[i - 1], p[i - 1], t[i], p[i], hi);
            if (!t_lo_down && p[i - 1] > lo && p[i] <= lo)
                t_lo_down = interp_crossing(t[i - 1], p[i - 1], t[i], p[i], lo);
        }
    }
    if (t_lo_up && t_hi_up)
        out.rise = *t_hi_up - *t_lo_up;
    if (t_hi_down && t_lo_down)
        out.fall = *t_lo_down - *t_hi_down;
    out.settled = reached_ref && !p.empty() && p.back() <= 0.01 * p_ref;
    return out;
}

StepResult integrate_step(const PneumaticCircuit& c, double p_ref, double duration, double dt) {
    const double t_release = duration / 2.0;
    const auto n = static_cast<std::size_t>(std::ceil(duration / dt));
    StepResult r;
    r.t_s.reserve(n + 1);
    r.p_kpa.reserve(n + 1);
    r.ref_kpa.reserve(n + 1);
    Rates rates{c};
    double p = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = std::min(i * dt, duration);
        if (i > 0) {
            // Explicit step driven by the reference at the start of the step.
            const double t_prev = (i - 1) * dt;
            const double ref_prev = t_prev < t_release ? p_ref : 0.0;
            p = track_step(rates, p, ref_prev, dt);
        }
        r.t_s.push_back(t);
        r.p_kpa.push_back(p);
        r.ref_kpa.push_back(t < t_release ? p_ref : 0.0);
    }
    return r;
}

} // namespace

StepResult step_response(const PneumaticCircuit& c, double p_ref_kpa, double duration_s,
                         double dt_s) {
    c.validate();
    if (p_ref_kpa < 0 || p_ref_kpa > c.supply_kpa)
        throw domain_error("step_response: reference must lie in [0, supply] kPa");
    if (!(dt_s > 0) || !(duration_s > dt_s))
        throw domain_error("step_response: need dt > 0 and duration > dt");

    if (p_ref_kpa == 0.0) {
        // Degenerate step: nothing to track, times undefined but flagged.
        StepResult r = integrate_step(c, 0.0, duration_s, dt_s);
        r.settled = true;
        return r;
    }

    // CFL-like guard: one step of the fastest slew must stay well below the
    // reference amplitude, otherwise the trace is meaningless.
    Rates rates{c};
    const double max_slew = std::max(rates.up(0.0), rates.down(c.supply_kpa));
    if (max_slew * dt_s > 0.25 * p_ref_kpa)
        throw computation_error("step_response: dt too large for this circuit (slew per step "
                                "exceeds 25% of the reference)");

    StepResult coarse = integrate_step(c, p_ref_kpa, duration_s, dt_s);
    StepResult fine = integrate_step(c, p_ref_kpa, duration_s, dt_s / 2.0);
    const StepTimes tc = extract_step_times(coarse.t_s, coarse.p_kpa, p_ref_kpa, duration_s / 2);
    const StepTimes tf = extract_step_times(fine.t_s, fine.p_kpa, p_ref_kpa, duration_s / 2);
    auto agree = [](const std::optional<double>& a, const std::optional<double>& b) {
        if (a.has_value() != b.has_value())
            return false;
        if (!a)
            return true;
        return std::abs(*a - *b) <= 0.01 * std::max(*a, *b);
    };
    if (!agree(tc.rise, tf.rise) || !agree(tc.fall, tf.fall))
        throw computation_error("step_response: step-halving check failed, decrease dt");
    coarse.rise_time_10_90_s = tc.rise;
    coarse.fall_time_90_10_s = tc.fall;
    coarse.settled = tc.settled;
    return coarse;
}

ClosedFillResult closed_fill(const PneumaticCircuit& c, double duration_s, double dt_s) {
    c.validate();
    if (!(dt_s > 0) || !(duration_s > dt_s))
        throw domain_error("closed_fill: need dt > 0 and duration > dt");
    ClosedFillResult r;
    const auto n = static_cast<std::size_t>(std::ceil(duration_s / dt_s));
    r.t_s.reserve(n + 1);
    r.tank_kpa.reserve(n + 1);
    r.act_kpa.reserve(n + 1);
    double p_tank = c.supply_kpa;
    double p_act = 0.0;
    const double v_tank = c.tank_l;
    const double v_act = c.act_ml / 1000.0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (i > 0 && p_tank > p_act) {
            const double q = orifice_flow_slps(p_tank + c.atm_kpa, p_act + c.atm_kpa, c.c_fill,
                                               c.b_crit);
            // Same standard flow drawn from the tank and pushed into the
            // actuator: std volume is conserved identically.
            const double dp_act = c.atm_kpa * q / v_act * dt_s;
            const double dp_tank = c.atm_kpa * q / v_tank * dt_s;
            if (p_act + dp_act >= p_tank - dp_tank) {
                // Would overshoot equilibrium in one step; land both sides on
                // the std-volume-preserving common pressure instead.
                const double p_eq = (p_tank * v_tank + p_act * v_act) / (v_tank + v_act);
                p_tank = p_eq;
                p_act = p_eq;
            } else {
                p_act += dp_act;
                p_tank -= dp_tank;
            }
        }
        r.t_s.push_back(std::min(i * dt_s, duration_s));
        r.tank_kpa.push_back(p_tank);
        r.act_kpa.push_back(p_act);
    }
    return r;
}

// ------------------------------------------------------------------
// Frequency response
// ------------------------------------------------------------------

namespace {

double sine_magnitude_db(const PneumaticCircuit& c, double mean, double amp, double f) {
    // Simulate cycle by cycle; the transient (at least 5 discarded cycles)
    // ends when two consecutive cycle amplitudes agree within 0.5%.
    constexpr int kMinCycles = 6;
    constexpr int kMaxCycles = 80;
    const double period = 1.0 / f;
    const double dt = std::min(1e-3, period / 400.0);
    const auto steps_per_cycle = static_cast<std::size_t>(std::ceil(period / dt));

    Rates rates{c};
    double p = mean; // start on the reference
    double t = 0.0;
    double prev_amp = -1.0;
    double out_amp = -1.0;
    for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
        double lo = p, hi = p;
        for (std::size_t i = 0; i < steps_per_cycle; ++i) {
            const double ref = mean + amp * std::sin(kTwoPi * f * t);
            p = track_step(rates, p, ref, dt);
            t += dt;
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        const double cyc_amp = (hi - lo) / 2.0;
        if (cycle >= kMinCycles - 1 && prev_amp >= 0 &&
            std::abs(cyc_amp - prev_amp) <= 0.005 * std::max(cyc_amp, 1e-9 * amp)) {
            out_amp = cyc_amp;
            break;
        }
        prev_amp = cyc_amp;
    }
    if (out_amp < 0)
        throw computation_error("frequency_response: output amplitude did not reach steady state");
    const double ratio = out_amp / amp;
    if (ratio > 1.0 + 1e-9)
        throw computation_error("frequency_response: magnitude exceeded 0 dB (model violation)");
    const double floor_db = -120.0;
    return ratio > 0 ? std::max(floor_db, 20.0 * std::log10(ratio)) : floor_db;
}

} // namespace

std::vector<BodePoint> frequency_response(const PneumaticCircuit& c, double mean_kpa,
                                          double amp_kpa, std::span<const double> freqs_hz,
                                          Exec exec) {
    c.validate();
    if (!(amp_kpa > 0))
        throw domain_error("frequency_response: amplitude must be > 0");
    if (mean_kpa - amp_kpa <= 0 || mean_kpa + amp_kpa >= c.supply_kpa)
        throw domain_error("frequency_response: mean +/- amp must stay strictly inside "
                           "(0, supply)");
    for (double f : freqs_hz)
        if (!(f > 0))
            throw domain_error("frequency_response: frequencies must be > 0");

    std::vector<BodePoint> out(freqs_hz.size());
    if (exec == Exec::Parallel) {
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(freqs_hz.size()); ++i) {
            const auto k = static_cast<std::size_t>(i);
            try {
                out[k] = {freqs_hz[k], sine_magnitude_db(c, mean_kpa, amp_kpa, freqs_hz[k])};
            } catch (...) {
#pragma omp critical
                if (!error)
                    error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
    } else {
        for (std::size_t k = 0; k < freqs_hz.size(); ++k)
            out[k] = {freqs_hz[k], sine_magnitude_db(c, mean_kpa, amp_kpa, freqs_hz[k])};
    }
    return out;
}

double cutoff_minus3db_hz(std::span<const BodePoint> response) {
    constexpr double kLevel = -3.0;
    if (response.size() < 2)
        throw computation_error("cutoff: need at least two response points");
    for (const BodePoint& p : response)
        if (p.magnitude_db == kLevel)
            return p.freq_hz;
    for (std::size_t i = 1; i < response.size(); ++i) {
        const BodePoint& a = response[i - 1];
        const BodePoint& b = response[i];
        if (a.magnitude_db > kLevel && b.magnitude_db < kLevel) {
            const double t = (kLevel - a.magnitude_db) / (b.magnitude_db - a.magnitude_db);
            return std::exp(std::log(a.freq_hz) + t * (std::log(b.freq_hz) - std::log(a.freq_hz)));
        }
    }
    throw computation_error("cutoff: response does not cross -3 dB in the sampled range");
}

PneumaticCircuit calibrate_bandwidth(PneumaticCircuit c, double mean_kpa, double amp_kpa,
                                     double target_cutoff_hz) {
    if (!(target_cutoff_hz > 0))
        throw domain_error("calibrate_bandwidth: target cutoff must be > 0");
    // Scaling both conductances by s rescales time exactly, so the cutoff is
    // linear in s; two passes squeeze out the interpolation error.
    for (int pass = 0; pass < 2; ++pass) {
        const std::vector<double> grid =
            log_spaced(target_cutoff_hz / 8.0, target_cutoff_hz * 8.0, 21);
        const auto resp = frequency_response(c, mean_kpa, amp_kpa, grid);
        const double measured = cutoff_minus3db_hz(resp);
        const double s = target_cutoff_hz / measured;
        c.c_fill *= s;
        c.c_vent *= s;
        if (std::abs(s - 1.0) < 5e-3)
            break;
    }
    return c;
}

std::vector<double> log_spaced(double f_min_hz, double f_max_hz, int n) {
    if (!(f_min_hz > 0) || !(f_max_hz > f_min_hz) || n < 2)
        throw domain_error("log_spaced: need 0 < f_min < f_max and n >= 2");
    std::vector<double> f(static_cast<std::size_t>(n));
    const double a = std::log(f_min_hz);
    const double b = std::log(f_max_hz);
    for (int i = 0; i < n; ++i)
        f[static_cast<std::size_t>(i)] =
            i == n - 1 ? f_max_hz : std::exp(a + (b - a) * i / (n - 1));
    return f;
}

} // namespace exo::pneumo
