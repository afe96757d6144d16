#include "exo/design_opt.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "exo/errors.hpp"

namespace exo::design {

namespace {
// Anchor constants: uniform 90 mm profile, 7.5 mm seal, 9.7 N*m at 90 kPa.
constexpr double kAnchorMomentNm = 9.7;
constexpr double kAnchorPressureKpa = 90.0;
constexpr double kAnchorWidthMm = 90.0;
constexpr double kAnchorSealMm = 7.5;
constexpr double kAnchorFloorMm = 5.0;
} // namespace

double anchor_k_eff() {
    return kAnchorMomentNm /
           ((kAnchorWidthMm - 2.0 * kAnchorSealMm) * 0.001 * kAnchorPressureKpa *
            (kAnchorFloorMm * 1e-3));
}

void DesignConstraints::validate() const {
    if (!(m_target_nm > 0))
        throw domain_error("DesignConstraints: target moment must be > 0");
    if (!(p_design_kpa > 0))
        throw domain_error("DesignConstraints: design pressure must be > 0");
    if (!(w_min_end_mm > 2.0 * seal1_mm))
        throw domain_error("DesignConstraints: minimum end width must exceed 2*seal1");
    if (!(w2_mm > 0))
        throw domain_error("DesignConstraints: fold width must be > 0");
    for (const Bounds& b : {w1_mm, w3_mm, lu_mm, lp_mm})
        if (!(b.lo > 0) || b.hi < b.lo)
            throw domain_error("DesignConstraints: bounds must be ordered and positive");
    if (w1_mm.hi > w2_mm || w3_mm.hi > w2_mm)
        throw domain_error("DesignConstraints: end-width bounds cannot exceed the fold width");
    if (!(x_floor_mm > 0) || !(station_step_mm > 0) || !(grid_w_step_mm > 0) ||
        !(grid_l_step_mm > 0))
        throw domain_error("DesignConstraints: steps and x_floor must be > 0");
}

double DesignConstraints::effective_k() const { return k_eff > 0 ? k_eff : anchor_k_eff(); }

double force_demand_n(const DesignConstraints& c, double x_mm) {
    const double x_m = std::max(x_mm, c.x_floor_mm) * 1e-3;
    return c.m_target_nm / x_m;
}

double width_demand_preclamp_mm(const DesignConstraints& c, double x_mm) {
    return force_demand_n(c, x_mm) / (c.effective_k() * 0.001 * c.p_design_kpa);
}

double required_width_mm(const DesignConstraints& c, double x_mm) {
    const double w = width_demand_preclamp_mm(c, x_mm) + 2.0 * c.seal1_mm;
    return std::clamp(w, c.w_min_end_mm, c.w2_mm);
}

// ------------------------------------------------------------------
// Feasibility / margin
// ------------------------------------------------------------------

namespace {

// Moment the station at distance s from the fold can carry with local
// width w: inverse of the demand formula (same x_floor clamp).
double station_capacity_nm(const DesignConstraints& c, double w_mm, double s_mm) {
    const double lever_m = std::max(s_mm, c.x_floor_mm) * 1e-3;
    return (w_mm - 2.0 * c.seal1_mm) * c.effective_k() * 0.001 * c.p_design_kpa * lever_m;
}

// min station capacity over one segment, sampled strictly beyond x_floor
// (the fold region is carried by w2) plus the segment end. w_end is the
// width at distance len from the fold; the profile is linear in between.
double segment_min_capacity(const DesignConstraints& c, double w_fold, double w_end, double len) {
    double best = std::numeric_limits<double>::infinity();
    auto width_at_s = [&](double s) { return w_fold + (w_end - w_fold) * s / len; };
    for (double s = c.x_floor_mm + c.station_step_mm; s < len; s += c.station_step_mm)
        best = std::min(best, station_capacity_nm(c, width_at_s(s), s));
    best = std::min(best, station_capacity_nm(c, w_end, len));
    return best;
}

struct Candidate {
    double w1 = 0, w3 = 0, lu = 0, lp = 0;
    double volume_ml = 0;
    double margin_nm = 0;
    bool feasible = false;
    bool valid = false;

    // Total order: feasible first, then min volume, larger margin,
    // lexicographic parameters. Deterministic regardless of visit order.
    bool better_than(const Candidate& o) const {
        if (!o.valid)
            return true;
        if (!valid)
            return false;
        if (feasible != o.feasible)
            return feasible;
        if (feasible) {
            if (volume_ml != o.volume_ml)
                return volume_ml < o.volume_ml;
        } else {
            if (margin_nm != o.margin_nm)
                return margin_nm > o.margin_nm;
            if (volume_ml != o.volume_ml)
                return volume_ml < o.volume_ml;
        }
        if (margin_nm != o.margin_nm)
            return margin_nm > o.margin_nm;
        if (w1 != o.w1)
            return w1 < o.w1;
        if (w3 != o.w3)
            return w3 < o.w3;
        if (lu != o.lu)
            return lu < o.lu;
        return lp < o.lp;
    }
};

geo::SpindleProfile make_profile(const DesignConstraints& c, double w1, double w3, double lu,
                                 double lp) {
    geo::SpindleProfile p;
    p.lu_mm = lu;
    p.lp_mm = lp;
    p.w1_mm = w1;
    p.w2_mm = c.w2_mm;
    p.w3_mm = w3;
    p.seal1_mm = c.seal1_mm;
    p.seal2_mm = c.seal2_mm;
    p.theta_d_deg = c.theta_d_deg;
    p.theta_r_deg = c.theta_r_deg;
    p.theta_f_deg = c.theta_f_deg;
    return p;
}

Candidate evaluate_candidate(const DesignConstraints& c, const geo::VolumeModelConfig& vcfg,
                             double w1, double w3, double lu, double lp) {
    Candidate cand;
    cand.w1 = w1;
    cand.w3 = w3;
    cand.lu = lu;
    cand.lp = lp;
    cand.valid = true;
    try {
        const geo::SpindleProfile p = make_profile(c, w1, w3, lu, lp);
        cand.volume_ml = geo::inflated_volume_ml(p, vcfg);
        cand.margin_nm = torque_margin_nm(p, c);
        cand.feasible = cand.margin_nm >= 0 && w1 >= c.w_min_end_mm && w3 >= c.w_min_end_mm;
    } catch (const domain_error&) {
        // degenerate geometry (width at or below the seal allowance) is just
        // an infeasible grid point, not a failed search
        cand.volume_ml = std::numeric_limits<double>::infinity();
        cand.margin_nm = -std::numeric_limits<double>::infinity();
        cand.feasible = false;
    }
    return cand;
}

std::vector<double> axis_values(const Bounds& b, double step) {
    std::vector<double> v;
    for (double x = b.lo; x < b.hi; x += step)
        v.push_back(x);
    v.push_back(b.hi);
    return v;
}

} // namespace

double torque_margin_nm(const geo::SpindleProfile& p, const DesignConstraints& c) {
    const double cap = std::min(segment_min_capacity(c, p.w2_mm, p.w1_mm, p.lu_mm),
                                segment_min_capacity(c, p.w2_mm, p.w3_mm, p.lp_mm));
    return cap - c.m_target_nm;
}

bool satisfies_width_demand(const geo::SpindleProfile& p, const DesignConstraints& c) {
    auto segment_ok = [&](double w_end, double len) {
        auto width_at_s = [&](double s) { return p.w2_mm + (w_end - p.w2_mm) * s / len; };
        for (double s = c.x_floor_mm + c.station_step_mm; s < len; s += c.station_step_mm)
            if (width_at_s(s) < required_width_mm(c, s))
                return false;
        return w_end >= required_width_mm(c, len);
    };
    return segment_ok(p.w1_mm, p.lu_mm) && segment_ok(p.w3_mm, p.lp_mm);
}

DesignReport optimize_spindle(const DesignConstraints& c, const geo::VolumeModelConfig& vcfg,
                              Exec exec, std::vector<ExploredPoint>* frontier,
                              const pneumo::PneumaticCircuit& circuit) {
    c.validate();
    vcfg.validate();

    const std::vector<double> w1s = axis_values(c.w1_mm, c.grid_w_step_mm);
    const std::vector<double> w3s = axis_values(c.w3_mm, c.grid_w_step_mm);
    const std::vector<double> lus = axis_values(c.lu_mm, c.grid_l_step_mm);
    const std::vector<double> lps = axis_values(c.lp_mm, c.grid_l_step_mm);

    const std::size_t total = w1s.size() * w3s.size() * lus.size() * lps.size();
    std::vector<Candidate> grid(total);

    auto eval_index = [&](std::size_t idx) {
        std::size_t rest = idx;
        const double lp = lps[rest % lps.size()];
        rest /= lps.size();
        const double lu = lus[rest % lus.size()];
        rest /= lus.size();
        const double w3 = w3s[rest % w3s.size()];
        rest /= w3s.size();
        const double w1 = w1s[rest];
        grid[idx] = evaluate_candidate(c, vcfg, w1, w3, lu, lp);
    };

    if (exec == Exec::Parallel) {
        std::exception_ptr error;
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(total); ++i) {
            try {
                eval_index(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!error)
                    error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
    } else {
        for (std::size_t i = 0; i < total; ++i)
            eval_index(i);
    }

    // Deterministic reduction in index order.
    Candidate best;
    for (const Candidate& cand : grid)
        if (cand.better_than(best))
            best = cand;

    if (frontier) {
        frontier->clear();
        frontier->reserve(total);
        for (const Candidate& cand : grid)
            frontier->push_back({cand.w1, cand.w3, cand.lu, cand.lp, cand.volume_ml,
                                 cand.margin_nm, cand.feasible});
    }

    // Coordinate descent refinement, shrink factor 0.5, three rounds.
    constexpr int kRefineRounds = 3;
    double w_step = c.grid_w_step_mm / 2.0;
    double l_step = c.grid_l_step_mm / 2.0;
    for (int round = 0; round < kRefineRounds; ++round) {
        for (int coord = 0; coord < 4; ++coord) {
            const double step = coord < 2 ? w_step : l_step;
            for (double sgn : {-1.0, 1.0}) {
                double w1 = best.w1, w3 = best.w3, lu = best.lu, lp = best.lp;
                double* target = coord == 0 ? &w1 : coord == 1 ? &w3 : coord == 2 ? &lu : &lp;
                const Bounds& b = coord == 0   ? c.w1_mm
                                  : coord == 1 ? c.w3_mm
                                  : coord == 2 ? c.lu_mm
                                               : c.lp_mm;
                *target = std::clamp(*target + sgn * step, b.lo, b.hi);
                Candidate cand = evaluate_candidate(c, vcfg, w1, w3, lu, lp);
                if (frontier)
                    frontier->push_back({cand.w1, cand.w3, cand.lu, cand.lp, cand.volume_ml,
                                         cand.margin_nm, cand.feasible});
                if (cand.better_than(best))
                    best = cand;
            }
        }
        w_step /= 2.0;
        l_step /= 2.0;
    }

    DesignReport report;
    report.profile = make_profile(c, best.w1, best.w3, best.lu, best.lp);
    report.volume_ml = best.volume_ml;
    report.torque_margin_nm = best.margin_nm;
    report.feasible = best.feasible;
    pneumo::PneumaticCircuit sized = circuit;
    sized.act_ml = report.volume_ml;
    const auto step = pneumo::step_response(sized, std::min(c.p_design_kpa, sized.supply_kpa));
    report.rise_time_index_s = step.rise_time_10_90_s.value_or(0.0);
    return report;
}

DesignReport evaluate_design(const geo::SpindleProfile& p, const DesignConstraints& c,
                             const pneumo::PneumaticCircuit& circuit,
                             const geo::VolumeModelConfig& vcfg) {
    c.validate();
    p.validate();
    DesignReport report;
    report.profile = p;
    report.volume_ml = geo::inflated_volume_ml(p, vcfg);
    report.torque_margin_nm = torque_margin_nm(p, c);
    report.feasible = report.torque_margin_nm >= 0 && p.w1_mm >= c.w_min_end_mm &&
                      p.w3_mm >= c.w_min_end_mm;
    pneumo::PneumaticCircuit sized = circuit;
    sized.act_ml = report.volume_ml;
    const auto step = pneumo::step_response(sized, std::min(c.p_design_kpa, sized.supply_kpa));
    report.rise_time_index_s = step.rise_time_10_90_s.value_or(0.0);
    return report;
}

} // namespace exo::design
