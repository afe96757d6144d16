#include "exo/io/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "exo/errors.hpp"
#include "exo/io/csv.hpp"

namespace exo::io {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

ConfigMap parse_config(const std::string& text) {
    ConfigMap m;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config line " + std::to_string(lineno) + ": empty key or value");
        if (!m.emplace(key, value).second)
            throw config_error("config: duplicate key '" + key + "'");
    }
    return m;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw io_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

void reject_unknown_keys(const ConfigMap& m, const std::set<std::string>& allowed,
                         const std::string& context) {
    for (const auto& [key, value] : m)
        if (!allowed.count(key))
            throw config_error(context + ": unknown key '" + key + "'");
}

double require_num(const ConfigMap& m, const std::string& key, const std::string& context) {
    const auto it = m.find(key);
    if (it == m.end())
        throw config_error(context + ": missing key '" + key + "'");
    try {
        return parse_num(it->second);
    } catch (const io_error&) {
        throw config_error(context + ": key '" + key + "' is not numeric");
    }
}

double get_num(const ConfigMap& m, const std::string& key, double fallback) {
    const auto it = m.find(key);
    if (it == m.end())
        return fallback;
    try {
        return parse_num(it->second);
    } catch (const io_error&) {
        throw config_error("config key '" + key + "' is not numeric");
    }
}

// ------------------------------------------------------------------
// Typed loaders
// ------------------------------------------------------------------

geo::SpindleProfile profile_from_config(const ConfigMap& m, const std::string& context) {
    reject_unknown_keys(m,
                        {"lu_mm", "lp_mm", "w1_mm", "w2_mm", "w3_mm", "w_seal1_mm", "w_seal2_mm",
                         "theta_d_deg", "theta_r_deg", "theta_f_deg"},
                        context);
    geo::SpindleProfile p;
    p.lu_mm = require_num(m, "lu_mm", context);
    p.lp_mm = require_num(m, "lp_mm", context);
    p.w1_mm = require_num(m, "w1_mm", context);
    p.w2_mm = require_num(m, "w2_mm", context);
    p.w3_mm = require_num(m, "w3_mm", context);
    p.seal1_mm = require_num(m, "w_seal1_mm", context);
    p.seal2_mm = require_num(m, "w_seal2_mm", context);
    p.theta_d_deg = require_num(m, "theta_d_deg", context);
    p.theta_r_deg = require_num(m, "theta_r_deg", context);
    p.theta_f_deg = require_num(m, "theta_f_deg", context);
    p.validate();
    return p;
}

geo::SpindleProfile load_profile(const std::string& name_or_path) {
    std::string upper = name_or_path;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "UCAA")
        return geo::ucaa_preset();
    if (upper == "SSAA")
        return geo::ssaa_preset();
    return profile_from_config(load_config_file(name_or_path), "profile " + name_or_path);
}

pneumo::PneumaticCircuit circuit_from_config(const ConfigMap& m, const std::string& context) {
    reject_unknown_keys(m,
                        {"p_supply_kpa", "p_atm_kpa", "v_tank_l", "v_act_ml", "c_fill_lps_bar",
                         "c_vent_lps_bar", "b_crit", "temperature_k"},
                        context);
    pneumo::PneumaticCircuit c;
    c.supply_kpa = get_num(m, "p_supply_kpa", c.supply_kpa);
    c.atm_kpa = get_num(m, "p_atm_kpa", c.atm_kpa);
    c.tank_l = get_num(m, "v_tank_l", c.tank_l);
    c.act_ml = get_num(m, "v_act_ml", c.act_ml);
    c.c_fill = get_num(m, "c_fill_lps_bar", c.c_fill);
    c.c_vent = get_num(m, "c_vent_lps_bar", c.c_vent);
    c.b_crit = get_num(m, "b_crit", c.b_crit);
    c.temperature_k = get_num(m, "temperature_k", c.temperature_k);
    c.validate();
    return c;
}

design::DesignConstraints constraints_from_config(const ConfigMap& m, const std::string& context) {
    reject_unknown_keys(
        m, {"m_target_nm",  "p_design_kpa", "w_min_end_mm", "w2_mm",         "w1_min_mm",
            "w1_max_mm",    "w3_min_mm",    "w3_max_mm",    "lu_min_mm",     "lu_max_mm",
            "lp_min_mm",    "lp_max_mm",    "w_seal1_mm",   "w_seal2_mm",    "theta_d_deg",
            "theta_r_deg",  "theta_f_deg",  "k_eff",        "x_floor_mm",    "grid_w_step_mm",
            "grid_l_step_mm", "station_step_mm"},
        context);
    design::DesignConstraints c;
    c.m_target_nm = require_num(m, "m_target_nm", context);
    c.p_design_kpa = require_num(m, "p_design_kpa", context);
    c.w_min_end_mm = require_num(m, "w_min_end_mm", context);
    c.w2_mm = require_num(m, "w2_mm", context);
    c.w1_mm = {require_num(m, "w1_min_mm", context), require_num(m, "w1_max_mm", context)};
    c.w3_mm = {require_num(m, "w3_min_mm", context), require_num(m, "w3_max_mm", context)};
    c.lu_mm = {require_num(m, "lu_min_mm", context), require_num(m, "lu_max_mm", context)};
    c.lp_mm = {require_num(m, "lp_min_mm", context), require_num(m, "lp_max_mm", context)};
    c.seal1_mm = get_num(m, "w_seal1_mm", c.seal1_mm);
    c.seal2_mm = get_num(m, "w_seal2_mm", c.seal2_mm);
    c.theta_d_deg = get_num(m, "theta_d_deg", c.theta_d_deg);
    c.theta_r_deg = get_num(m, "theta_r_deg", c.theta_r_deg);
    c.theta_f_deg = get_num(m, "theta_f_deg", c.theta_f_deg);
    c.k_eff = get_num(m, "k_eff", 0.0);
    c.x_floor_mm = get_num(m, "x_floor_mm", c.x_floor_mm);
    c.grid_w_step_mm = get_num(m, "grid_w_step_mm", c.grid_w_step_mm);
    c.grid_l_step_mm = get_num(m, "grid_l_step_mm", c.grid_l_step_mm);
    c.station_step_mm = get_num(m, "station_step_mm", c.station_step_mm);
    c.validate();
    return c;
}

ArmConfig arm_from_config(const ConfigMap& m, const std::string& context) {
    reject_unknown_keys(m,
                        {"body_mass_kg", "height_cm", "load_kg", "arm_mass_fraction",
                         "com_fraction", "length_fraction", "load_lever_fraction"},
                        context);
    ArmConfig a;
    a.body_mass_kg = get_num(m, "body_mass_kg", a.body_mass_kg);
    a.height_cm = get_num(m, "height_cm", a.height_cm);
    a.load_kg = get_num(m, "load_kg", a.load_kg);
    a.coeffs.arm_mass_fraction = get_num(m, "arm_mass_fraction", a.coeffs.arm_mass_fraction);
    a.coeffs.com_fraction = get_num(m, "com_fraction", a.coeffs.com_fraction);
    a.coeffs.length_fraction = get_num(m, "length_fraction", a.coeffs.length_fraction);
    a.coeffs.load_lever_fraction =
        get_num(m, "load_lever_fraction", a.coeffs.load_lever_fraction);
    return a;
}

} // namespace exo::io
