#include "exo/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "exo/biomech.hpp"
#include "exo/design_opt.hpp"
#include "exo/emg_pipeline.hpp"
#include "exo/errors.hpp"
#include "exo/geometry.hpp"
#include "exo/haa_torque.hpp"
#include "exo/io/config.hpp"
#include "exo/io/csv.hpp"
#include "exo/io/svg.hpp"
#include "exo/pneumatics.hpp"
#include "exo/pouch_model.hpp"
#include "exo/stats.hpp"

namespace exo::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

double r12(double v) { return io::parse_num(io::format_num(v)); } // 12-digit cap for JSON

struct GlobalOpts {
    std::string out_dir = ".";
    std::string format = "csv";
    std::string plot = "none";
    std::uint64_t seed = 0; // reserved for sampling-based subcommands
};

fs::path plot_path(const GlobalOpts& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return fs::path(g.out_dir) / name;
}

// ------------------------------------------------------------------
// geometry volume
// ------------------------------------------------------------------

void cmd_geometry_volume(const GlobalOpts&, const std::string& profile_arg, double fill_factor,
                         double step_mm) {
    const geo::SpindleProfile p = io::load_profile(profile_arg);
    geo::VolumeModelConfig cfg = geo::default_volume_config();
    if (fill_factor > 0)
        cfg.fill_factor = fill_factor;
    if (step_mm > 0)
        cfg.integration_step_mm = step_mm;
    // closed-form frusta unless a step is requested explicitly
    const double volume = step_mm > 0 ? geo::inflated_volume_numeric_ml(p, cfg)
                                      : geo::inflated_volume_ml(p, cfg);
    json out;
    out["profile"] = profile_arg;
    out["volume_ml"] = r12(volume);
    out["integrator"] = step_mm > 0 ? "midpoint" : "frustum";
    out["params"] = {{"lu_mm", r12(p.lu_mm)},
                     {"lp_mm", r12(p.lp_mm)},
                     {"w1_mm", r12(p.w1_mm)},
                     {"w2_mm", r12(p.w2_mm)},
                     {"w3_mm", r12(p.w3_mm)},
                     {"w_seal1_mm", r12(p.seal1_mm)},
                     {"w_seal2_mm", r12(p.seal2_mm)},
                     {"theta_d_deg", r12(p.theta_d_deg)},
                     {"theta_r_deg", r12(p.theta_r_deg)},
                     {"theta_f_deg", r12(p.theta_f_deg)},
                     {"fill_factor", r12(cfg.fill_factor)}};
    std::cout << out.dump(2) << "\n";
}

// ------------------------------------------------------------------
// pouch curve
// ------------------------------------------------------------------

void cmd_pouch_curve(const GlobalOpts& g, double l4, double l5, double ld, double seal,
                     double pressure, int samples, double hmin, double hmax) {
    const geo::PouchGeometry pouch(l4, l5, ld, seal);
    if (hmax <= 0)
        hmax = 2.0 * pouch.r4_mm;
    const auto curve = pouch::force_height_curve(pouch, pressure, hmin, hmax, samples);
    io::Table t;
    t.header = {"h_mm", "w4_mm", "w5_mm", "lc_mm", "regime", "A_mm2", "F_N"};
    for (const auto& pt : curve)
        t.rows.push_back({io::format_num(pt.state.h_mm), io::format_num(pt.state.w4_mm),
                          io::format_num(pt.state.w5_mm), io::format_num(pt.state.lc_mm),
                          pouch::to_string(pt.state.regime), io::format_num(pt.state.area_mm2),
                          io::format_num(pt.force_n)});
    io::write_csv(std::cout, t);
    if (g.plot == "svg") {
        io::svg::Series s{"F(h)", {}};
        for (const auto& pt : curve)
            s.points.emplace_back(pt.state.h_mm, pt.force_n);
        io::svg::PlotStyle style;
        style.title = "Pouch contact force vs compression height";
        style.x_label = "h (mm)";
        style.y_label = "F (N)";
        io::svg::write_plot_file(plot_path(g, "pouch_curve.svg").string(), {{s}}, style);
    }
}

// ------------------------------------------------------------------
// haa torque
// ------------------------------------------------------------------

void cmd_haa_torque(const GlobalOpts& g, double pressure, const std::string& beta_range,
                    int samples, double l4, double l5, double ld, double seal, double offset,
                    double max_pressure) {
    const auto colon = beta_range.find(':');
    if (colon == std::string::npos)
        throw domain_error("haa torque: --beta-range expects MIN:MAX");
    const double beta_min = io::parse_num(beta_range.substr(0, colon));
    const double beta_max = io::parse_num(beta_range.substr(colon + 1));
    const haa::HaaAssembly assembly(geo::PouchGeometry(l4, l5, ld, seal), offset);
    const auto curve =
        haa::torque_angle_curve(assembly, pressure, beta_min, beta_max, samples, max_pressure);
    io::Table t;
    t.header = {"beta_deg", "h_mm", "l_arm_mm", "regime", "F_N", "M_Nm"};
    for (const auto& pt : curve)
        t.rows.push_back({io::format_num(pt.bend.beta_deg), io::format_num(pt.bend.h_mm),
                          io::format_num(pt.bend.moment_arm_mm), pouch::to_string(pt.regime),
                          io::format_num(pt.force_n), io::format_num(pt.torque_nm)});
    io::write_csv(std::cout, t);
    if (g.plot == "svg") {
        io::svg::Series s{"M(beta)", {}};
        for (const auto& pt : curve)
            s.points.emplace_back(pt.bend.beta_deg, pt.torque_nm);
        io::svg::PlotStyle style;
        style.title = "Adduction torque vs bending angle";
        style.x_label = "beta (deg)";
        style.y_label = "M (N m)";
        io::svg::write_plot_file(plot_path(g, "haa_torque.svg").string(), {{s}}, style);
    }
}

// ------------------------------------------------------------------
// pneumo step / bode
// ------------------------------------------------------------------

pneumo::PneumaticCircuit circuit_from_flags(double volume_ml, double supply, double cfill,
                                            double cvent, double tank) {
    pneumo::PneumaticCircuit c;
    c.act_ml = volume_ml;
    c.supply_kpa = supply;
    if (cfill > 0)
        c.c_fill = cfill;
    if (cvent > 0)
        c.c_vent = cvent;
    if (tank > 0)
        c.tank_l = tank;
    return c;
}

void cmd_pneumo_step(const GlobalOpts& g, double volume_ml, double pref, double supply,
                     double cfill, double cvent, double tank, double duration, double dt) {
    const pneumo::PneumaticCircuit c = circuit_from_flags(volume_ml, supply, cfill, cvent, tank);
    const pneumo::StepResult r = pneumo::step_response(c, pref, duration, dt);
    if (g.format == "json") {
        json out;
        out["p_ref_kpa"] = r12(pref);
        out["settled"] = r.settled;
        if (r.rise_time_10_90_s)
            out["rise_time_10_90_s"] = r12(*r.rise_time_10_90_s);
        if (r.fall_time_90_10_s)
            out["fall_time_90_10_s"] = r12(*r.fall_time_90_10_s);
        json trace = json::array();
        for (std::size_t i = 0; i < r.t_s.size(); ++i)
            trace.push_back({r12(r.t_s[i]), r12(r.p_kpa[i])});
        out["trace_t_p"] = std::move(trace);
        std::cout << out.dump(2) << "\n";
    } else {
        io::Table t;
        if (r.rise_time_10_90_s)
            t.comments.push_back("rise_time_10_90_s = " + io::format_num(*r.rise_time_10_90_s));
        if (r.fall_time_90_10_s)
            t.comments.push_back("fall_time_90_10_s = " + io::format_num(*r.fall_time_90_10_s));
        t.comments.push_back(std::string("settled = ") + (r.settled ? "true" : "false"));
        t.header = {"t_s", "ref_kpa", "p_kpa"};
        for (std::size_t i = 0; i < r.t_s.size(); ++i)
            t.rows.push_back({io::format_num(r.t_s[i]), io::format_num(r.ref_kpa[i]),
                              io::format_num(r.p_kpa[i])});
        io::write_csv(std::cout, t);
    }
    if (g.plot == "svg") {
        io::svg::Series s{"p(t)", {}};
        for (std::size_t i = 0; i < r.t_s.size(); ++i)
            s.points.emplace_back(r.t_s[i], r.p_kpa[i]);
        io::svg::PlotStyle style;
        style.title = "Step response";
        style.x_label = "t (s)";
        style.y_label = "p (kPa)";
        style.annotate_rise_thresholds = true;
        style.threshold_ref = pref;
        io::svg::write_plot_file(plot_path(g, "pneumo_step.svg").string(), {{s}}, style);
    }
}

void cmd_pneumo_bode(const GlobalOpts& g, double volume_ml, double mean, double amp,
                     double fmin, double fmax, int points, double supply, double cfill,
                     double cvent) {
    const pneumo::PneumaticCircuit c = circuit_from_flags(volume_ml, supply, cfill, cvent, 0);
    if (amp <= 0)
        amp = mean / 2.0;
    const std::vector<double> freqs = pneumo::log_spaced(fmin, fmax, points);
    const auto resp = pneumo::frequency_response(c, mean, amp, freqs);
    std::string cutoff_note = "cutoff_minus3db_hz = ";
    try {
        cutoff_note += io::format_num(pneumo::cutoff_minus3db_hz(resp));
    } catch (const computation_error&) {
        cutoff_note += "not_in_range";
    }
    if (g.format == "json") {
        json out;
        out["mean_kpa"] = r12(mean);
        out["amp_kpa"] = r12(amp);
        json pts = json::array();
        for (const auto& bp : resp)
            pts.push_back({r12(bp.freq_hz), r12(bp.magnitude_db)});
        out["response_f_db"] = std::move(pts);
        try {
            out["cutoff_minus3db_hz"] = r12(pneumo::cutoff_minus3db_hz(resp));
        } catch (const computation_error&) {
            out["cutoff_minus3db_hz"] = nullptr;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        io::Table t;
        t.comments.push_back(cutoff_note);
        t.header = {"freq_hz", "magnitude_db"};
        for (const auto& bp : resp)
            t.rows.push_back({io::format_num(bp.freq_hz), io::format_num(bp.magnitude_db)});
        io::write_csv(std::cout, t);
    }
    if (g.plot == "svg") {
        io::svg::Series s{"|H|", {}};
        for (const auto& bp : resp)
            s.points.emplace_back(bp.freq_hz, bp.magnitude_db);
        io::svg::PlotStyle style;
        style.title = "Magnitude response";
        style.x_label = "f (Hz)";
        style.y_label = "magnitude (dB)";
        io::svg::write_plot_file(plot_path(g, "pneumo_bode.svg").string(), {{s}}, style);
    }
}

// ------------------------------------------------------------------
// design optimize
// ------------------------------------------------------------------

void cmd_design_optimize(const GlobalOpts& g, const std::string& config_path) {
    const design::DesignConstraints c =
        io::constraints_from_config(io::load_config_file(config_path), "design " + config_path);
    const geo::VolumeModelConfig vcfg = geo::default_volume_config();
    std::vector<design::ExploredPoint> frontier;
    const design::DesignReport r = design::optimize_spindle(c, vcfg, Exec::Parallel, &frontier);

    io::Table t;
    t.header = {"w1_mm", "w3_mm", "lu_mm", "lp_mm", "volume_ml", "margin_nm", "feasible"};
    for (const auto& pt : frontier)
        t.rows.push_back({io::format_num(pt.w1_mm), io::format_num(pt.w3_mm),
                          io::format_num(pt.lu_mm), io::format_num(pt.lp_mm),
                          io::format_num(pt.volume_ml), io::format_num(pt.margin_nm),
                          pt.feasible ? "1" : "0"});
    const fs::path frontier_path = plot_path(g, "design_frontier.csv");
    io::write_csv_file(frontier_path.string(), t);

    json out;
    out["feasible"] = r.feasible;
    out["volume_ml"] = r12(r.volume_ml);
    out["torque_margin_nm"] = r12(r.torque_margin_nm);
    out["rise_time_index_s"] = r12(r.rise_time_index_s);
    out["profile"] = {{"lu_mm", r12(r.profile.lu_mm)},
                      {"lp_mm", r12(r.profile.lp_mm)},
                      {"w1_mm", r12(r.profile.w1_mm)},
                      {"w2_mm", r12(r.profile.w2_mm)},
                      {"w3_mm", r12(r.profile.w3_mm)},
                      {"w_seal1_mm", r12(r.profile.seal1_mm)},
                      {"w_seal2_mm", r12(r.profile.seal2_mm)},
                      {"theta_d_deg", r12(r.profile.theta_d_deg)},
                      {"theta_r_deg", r12(r.profile.theta_r_deg)},
                      {"theta_f_deg", r12(r.profile.theta_f_deg)}};
    // The demand surrogate is anchored at a 90 mm fold width; other fold
    // widths are permitted but extrapolative.
    out["extrapolative"] = c.w2_mm != 90.0;
    out["frontier_csv"] = frontier_path.string();
    std::cout << out.dump(2) << "\n";
}

// ------------------------------------------------------------------
// sim assist
// ------------------------------------------------------------------

biomech::PressureSchedule schedule_from_csv(const std::string& path) {
    const io::Table t = io::read_csv_file(path);
    if (t.header != std::vector<std::string>{"time_s", "pressure_kpa"})
        throw io_error("schedule: expected header time_s,pressure_kpa in " + path);
    biomech::PressureSchedule s;
    for (const auto& row : t.rows) {
        if (row.size() != 2)
            throw io_error("schedule: malformed row in " + path);
        s.t_s.push_back(io::parse_num(row[0]));
        s.p_kpa.push_back(io::parse_num(row[1]));
    }
    s.validate();
    return s;
}

void cmd_sim_assist(const GlobalOpts& g, const std::string& arm_path,
                    const std::string& surface_path, const std::string& schedule_path, double dt,
                    bool strict_domain) {
    io::ArmConfig arm_cfg;
    if (!arm_path.empty())
        arm_cfg = io::arm_from_config(io::load_config_file(arm_path), "arm " + arm_path);
    const biomech::ArmModel arm = biomech::anthropometric_arm(
        arm_cfg.body_mass_kg, arm_cfg.height_cm, arm_cfg.load_kg, arm_cfg.coeffs);
    const biomech::MomentSurface surface = biomech::MomentSurface::from_csv_file(surface_path);
    const biomech::PressureSchedule schedule = schedule_from_csv(schedule_path);
    const auto series = biomech::assistance_profile(arm, surface, schedule, dt, !strict_domain);

    io::Table t;
    t.comments.push_back("surface_provenance = " + surface.provenance());
    t.header = {"t_s",        "angle_deg",   "pressure_kpa",    "gravity_nm",
                "actuator_nm", "residual_nm", "assist_fraction", "clamped"};
    for (const auto& smp : series)
        t.rows.push_back({io::format_num(smp.t_s), io::format_num(smp.angle_deg),
                          io::format_num(smp.pressure_kpa), io::format_num(smp.gravity_nm),
                          io::format_num(smp.actuator_nm), io::format_num(smp.residual_nm),
                          smp.assist_fraction ? io::format_num(*smp.assist_fraction) : "nan",
                          smp.clamped ? "1" : "0"});
    io::write_csv(std::cout, t);
    if (g.plot == "svg") {
        io::svg::Series grav{"gravity", {}}, act{"actuator", {}}, res{"residual", {}};
        for (const auto& smp : series) {
            grav.points.emplace_back(smp.t_s, smp.gravity_nm);
            act.points.emplace_back(smp.t_s, smp.actuator_nm);
            res.points.emplace_back(smp.t_s, smp.residual_nm);
        }
        io::svg::PlotStyle style;
        style.title = "Gravity compensation over the protocol";
        style.x_label = "t (s)";
        style.y_label = "moment (N m)";
        const std::vector<io::svg::Series> all = {grav, act, res};
        io::svg::write_plot_file(plot_path(g, "sim_assist.svg").string(), all, style);
    }
}

// ------------------------------------------------------------------
// emg run
// ------------------------------------------------------------------

void cmd_emg_run(const GlobalOpts& g, const std::string& recordings, const std::string& mvc,
                 const std::string& conditions, const std::string& out_file) {
    const emg::StudyReport report = emg::run_study(recordings, mvc, conditions);
    fs::path out = out_file.empty() ? plot_path(g, "report.json") : fs::path(out_file);
    if (out.has_parent_path())
        fs::create_directories(out.parent_path());
    std::ofstream f(out);
    if (!f)
        throw io_error("cannot write " + out.string());
    f << emg::report_to_json(report);
    std::cout << "wrote " << out.string() << " (" << report.comparisons.size()
              << " comparisons, " << report.muscles.size() << " muscles)\n";
}

// ------------------------------------------------------------------
// dispatcher
// ------------------------------------------------------------------

int run(const std::vector<std::string>& args) {
    CLI::App app{"Fabric pneumatic actuator modeling, design and study-statistics toolkit"};
    app.name("exokit");
    app.require_subcommand(1);
    app.set_config("--config")->description("key = value config merged with flags (flags win)");
    app.allow_config_extras(false);

    GlobalOpts g;
    app.add_option("--out-dir", g.out_dir, "Directory for generated files")
        ->envname("EXOKIT_OUT_DIR")
        ->capture_default_str();
    app.add_option("--format", g.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--plot", g.plot, "Plot emission: none or svg")
        ->check(CLI::IsMember({"none", "svg"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for sampling-based commands")->capture_default_str();

    // geometry volume
    auto* geometry = app.add_subcommand("geometry", "Actuator geometry");
    auto* volume = geometry->add_subcommand("volume", "Inflated volume of a width profile");
    std::string profile_arg;
    double fill_factor = 0, step_mm = 0;
    volume->add_option("--profile", profile_arg, "UCAA, SSAA or a profile config file")
        ->required();
    volume->add_option("--fill-factor", fill_factor, "Override the calibrated fill factor");
    volume->add_option("--step", step_mm, "Integration step (mm)");
    volume->callback([&] { cmd_geometry_volume(g, profile_arg, fill_factor, step_mm); });

    // pouch curve
    auto* pouch_cmd = app.add_subcommand("pouch", "Pouch motor contact model");
    auto* curve = pouch_cmd->add_subcommand("curve", "Force-height curve");
    double l4 = 118, l5 = 88, ld = 180, seal = 7.5, pressure = 90;
    int samples = 100;
    double hmin = 0, hmax = 0;
    curve->add_option("--l4", l4, "Upper edge length (mm)")->capture_default_str();
    curve->add_option("--l5", l5, "Lower edge length (mm)")->capture_default_str();
    curve->add_option("--ld", ld, "Pouch height (mm)")->capture_default_str();
    curve->add_option("--seal", seal, "Seal width (mm)")->capture_default_str();
    curve->add_option("--pressure", pressure, "Pressure (kPa)")->capture_default_str();
    curve->add_option("--samples", samples, "Sample count")->capture_default_str();
    curve->add_option("--hmin", hmin, "Minimum height (mm)")->capture_default_str();
    curve->add_option("--hmax", hmax, "Maximum height (mm, 0 = 2*r4)")->capture_default_str();
    curve->callback(
        [&] { cmd_pouch_curve(g, l4, l5, ld, seal, pressure, samples, hmin, hmax); });

    // haa torque
    auto* haa_cmd = app.add_subcommand("haa", "Horizontal adduction actuator");
    auto* torque = haa_cmd->add_subcommand("torque", "Torque-angle curve");
    double h_pressure = 90, h_l4 = 118, h_l5 = 88, h_ld = 180, h_seal = 7.5, h_offset = 7.5;
    double h_maxp = haa::kDefaultMaxPressureKpa;
    std::string beta_range = "0:210";
    int h_samples = 106;
    torque->add_option("--pressure", h_pressure, "Pressure (kPa)")->capture_default_str();
    torque->add_option("--beta-range", beta_range, "Angle range MIN:MAX (deg)")
        ->capture_default_str();
    torque->add_option("--samples", h_samples, "Sample count")->capture_default_str();
    torque->add_option("--l4", h_l4, "Upper edge length (mm)")->capture_default_str();
    torque->add_option("--l5", h_l5, "Lower edge length (mm)")->capture_default_str();
    torque->add_option("--ld", h_ld, "Pouch height (mm)")->capture_default_str();
    torque->add_option("--seal", h_seal, "Seal width (mm)")->capture_default_str();
    torque->add_option("--offset", h_offset, "Sewing offset d (mm)")->capture_default_str();
    torque->add_option("--max-pressure", h_maxp, "Validation ceiling (kPa)")
        ->capture_default_str();
    torque->callback([&] {
        cmd_haa_torque(g, h_pressure, beta_range, h_samples, h_l4, h_l5, h_ld, h_seal, h_offset,
                       h_maxp);
    });

    // pneumo step / bode
    auto* pneumo_cmd = app.add_subcommand("pneumo", "Filling and venting dynamics");
    auto* step = pneumo_cmd->add_subcommand("step", "Step response");
    double s_volume = 555, s_pref = 90, s_supply = 130, s_cfill = 0, s_cvent = 0, s_tank = 0;
    double s_duration = 20, s_dt = 1e-3;
    step->add_option("--volume-ml", s_volume, "Actuator volume (mL)")->capture_default_str();
    step->add_option("--pref", s_pref, "Step reference (kPa)")->capture_default_str();
    step->add_option("--supply", s_supply, "Supply pressure (kPa)")->capture_default_str();
    step->add_option("--cfill", s_cfill, "Fill conductance (std L/(s bar))");
    step->add_option("--cvent", s_cvent, "Vent conductance (std L/(s bar))");
    step->add_option("--tank", s_tank, "Tank volume (L)");
    step->add_option("--duration", s_duration, "Simulated time (s)")->capture_default_str();
    step->add_option("--dt", s_dt, "Integration step (s)")->capture_default_str();
    step->callback([&] {
        cmd_pneumo_step(g, s_volume, s_pref, s_supply, s_cfill, s_cvent, s_tank, s_duration,
                        s_dt);
    });

    auto* bode = pneumo_cmd->add_subcommand("bode", "Sinusoidal frequency response");
    double b_volume = 714, b_mean = 20, b_amp = 0, b_fmin = 0.05, b_fmax = 8, b_supply = 130;
    double b_cfill = 0, b_cvent = 0;
    int b_points = 25;
    bode->add_option("--volume-ml", b_volume, "Actuator volume (mL)")->capture_default_str();
    bode->add_option("--mean", b_mean, "Mean pressure (kPa)")->capture_default_str();
    bode->add_option("--amp", b_amp, "Amplitude (kPa, 0 = mean/2)")->capture_default_str();
    bode->add_option("--fmin", b_fmin, "Lowest frequency (Hz)")->capture_default_str();
    bode->add_option("--fmax", b_fmax, "Highest frequency (Hz)")->capture_default_str();
    bode->add_option("--points", b_points, "Frequency count")->capture_default_str();
    bode->add_option("--supply", b_supply, "Supply pressure (kPa)")->capture_default_str();
    bode->add_option("--cfill", b_cfill, "Fill conductance (std L/(s bar))");
    bode->add_option("--cvent", b_cvent, "Vent conductance (std L/(s bar))");
    bode->callback([&] {
        cmd_pneumo_bode(g, b_volume, b_mean, b_amp, b_fmin, b_fmax, b_points, b_supply, b_cfill,
                        b_cvent);
    });

    // design optimize
    auto* design_cmd = app.add_subcommand("design", "Spindle profile synthesis");
    auto* optimize = design_cmd->add_subcommand("optimize", "Minimum-volume feasible profile");
    std::string design_config;
    optimize->add_option("--config", design_config, "Design constraints config file")
        ->required();
    optimize->callback([&] { cmd_design_optimize(g, design_config); });

    // sim assist
    auto* sim = app.add_subcommand("sim", "Shoulder gravity-compensation simulation");
    auto* assist = sim->add_subcommand("assist", "Protocol assistance time series");
    std::string arm_path, surface_path, schedule_path;
    double a_dt = 0.02;
    bool strict_domain = false;
    assist->add_option("--arm", arm_path, "Arm config file (defaults when omitted)");
    assist->add_option("--surface", surface_path, "Moment surface CSV")->required();
    assist->add_option("--schedule", schedule_path, "Pressure schedule CSV")->required();
    assist->add_option("--dt", a_dt, "Output step (s)")->capture_default_str();
    assist->add_flag("--strict-domain", strict_domain,
                     "Error on queries outside the surface instead of clamping");
    assist->callback(
        [&] { cmd_sim_assist(g, arm_path, surface_path, schedule_path, a_dt, strict_domain); });

    // emg run
    auto* emg_cmd = app.add_subcommand("emg", "sEMG preprocessing and statistics");
    auto* run_cmd = emg_cmd->add_subcommand("run", "Batch study pipeline");
    std::string recordings, mvc_file, conditions_file, out_file;
    run_cmd->add_option("--recordings", recordings, "Directory with recording CSVs")->required();
    run_cmd->add_option("--mvc", mvc_file, "MVC CSV (one value row)")->required();
    run_cmd->add_option("--conditions", conditions_file, "Conditions map CSV")->required();
    run_cmd->add_option("--out", out_file, "Report path (default <out-dir>/report.json)");
    run_cmd->callback([&] { cmd_emg_run(g, recordings, mvc_file, conditions_file, out_file); });

    for (auto* group : {geometry, pouch_cmd, haa_cmd, pneumo_cmd, design_cmd, sim, emg_cmd})
        group->require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "exokit: error [usage]: " << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return 2;
    }
    return 0;
}

} // namespace

int dispatch(const std::vector<std::string>& args) {
    try {
        return run(args);
    } catch (const domain_error& e) {
        std::cerr << "exokit: error [domain]: " << e.what() << "\n";
        return 1;
    } catch (const config_error& e) {
        std::cerr << "exokit: error [config]: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "exokit: error [io]: " << e.what() << "\n";
        return 1;
    } catch (const computation_error& e) {
        std::cerr << "exokit: error [compute]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "exokit: error [internal]: " << e.what() << "\n";
        return 1;
    }
}

int dispatch(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return dispatch(args);
}

} // namespace exo::cli
