#pragma once

#include <optional>
#include <vector>

#include "exo/geometry.hpp"
#include "exo/parallel.hpp"
#include "exo/pneumatics.hpp"

namespace exo::design {

struct Bounds {
    double lo = 0;
    double hi = 0;
    bool degenerate() const { return lo == hi; }
};

// Width-synthesis constraints. The station demand follows a 1/x force law
// away from the fold: a station at distance x must carry F(x) = m_target/x
// (x in meters, floored at x_floor), which translates into a minimum local
// width through the effectiveness coefficient k_eff. k_eff defaults to the
// anchor calibration (uniform 90 mm profile meets 9.7 N*m at 90 kPa with
// zero margin); override it only with a better-characterized actuator.
struct DesignConstraints {
    double m_target_nm = 9.7;
    double p_design_kpa = 90.0;
    double w_min_end_mm = 50.0;
    double w2_mm = 90.0;
    Bounds w1_mm{50.0, 90.0};
    Bounds w3_mm{50.0, 90.0};
    Bounds lu_mm{162.0, 162.0};
    Bounds lp_mm{192.0, 192.0};
    double seal1_mm = 7.5;
    double seal2_mm = 10.0;
    double theta_d_deg = 155.0;
    double theta_r_deg = 155.0;
    double theta_f_deg = 151.0;
    double k_eff = 0; // 0 -> anchor_k_eff()
    double x_floor_mm = 5.0;
    double grid_w_step_mm = 2.0;
    double grid_l_step_mm = 10.0;
    double station_step_mm = 1.0;

    void validate() const;
    double effective_k() const;
};

// k_eff anchored so that a uniform 90 mm wide, 7.5 mm sealed profile meets
// 9.7 N*m at 90 kPa with zero margin at the x_floor station.
double anchor_k_eff();

// Station force demand m_target / max(x, x_floor), x in mm, force in N.
double force_demand_n(const DesignConstraints& c, double x_mm);

// Width demand before clamping, excluding the seal allowance:
// F(x) / (k_eff * 0.001 * p_design). Halves exactly when p_design doubles.
double width_demand_preclamp_mm(const DesignConstraints& c, double x_mm);

// clamp(preclamp + 2*seal1, w_min_end, w2): the synthesized width profile,
// monotone nonincreasing away from the fold.
double required_width_mm(const DesignConstraints& c, double x_mm);

struct DesignReport {
    geo::SpindleProfile profile;
    double volume_ml = 0;
    double torque_margin_nm = 0;
    double rise_time_index_s = 0;
    bool feasible = false;
};

struct ExploredPoint {
    double w1_mm = 0;
    double w3_mm = 0;
    double lu_mm = 0;
    double lp_mm = 0;
    double volume_ml = 0;
    double margin_nm = 0;
    bool feasible = false;
};

// Margin of the weakest station against the demand (min station capacity
// minus m_target); negative for infeasible profiles. Stations are sampled
// at station_step_mm strictly beyond x_floor on each segment (the fold
// region itself is carried by w2) plus the segment ends.
double torque_margin_nm(const geo::SpindleProfile& p, const DesignConstraints& c);

bool satisfies_width_demand(const geo::SpindleProfile& p, const DesignConstraints& c);

// Deterministic grid search over the free parameters followed by >= 3
// rounds of coordinate descent with step shrink 0.5. Minimizes inflated
// volume over feasible profiles; ties break toward larger torque margin,
// then lexicographic (w1, w3, lu, lp). An infeasible box yields a report
// with feasible = false (the least-infeasible point), not an exception.
// Evaluations are independent; the result is identical for both policies.
DesignReport optimize_spindle(const DesignConstraints& c, const geo::VolumeModelConfig& vcfg,
                              Exec exec = Exec::Parallel,
                              std::vector<ExploredPoint>* frontier = nullptr,
                              const pneumo::PneumaticCircuit& circuit = pneumo::PneumaticCircuit{});

// Volume, demand margin, and rise-time index (step response of the
// reference circuit resized to the profile's inflated volume).
DesignReport evaluate_design(const geo::SpindleProfile& p, const DesignConstraints& c,
                             const pneumo::PneumaticCircuit& circuit,
                             const geo::VolumeModelConfig& vcfg);

} // namespace exo::design
