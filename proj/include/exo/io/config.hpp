#pragma once

#include <map>
#include <set>
#include <string>

#include "exo/biomech.hpp"
#include "exo/design_opt.hpp"
#include "exo/geometry.hpp"
#include "exo/pneumatics.hpp"

namespace exo::io {

// "key = value" declarative files with '#' comments. Keys carry explicit
// units (..._mm, ..._kpa, ..._s). Unknown keys are rejected.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap load_config_file(const std::string& path);
ConfigMap parse_config(const std::string& text);

void reject_unknown_keys(const ConfigMap& m, const std::set<std::string>& allowed,
                         const std::string& context);

double require_num(const ConfigMap& m, const std::string& key, const std::string& context);
double get_num(const ConfigMap& m, const std::string& key, double fallback);

// Profile loading: built-in presets "UCAA" and "SSAA", otherwise a path to
// a profile config file.
geo::SpindleProfile load_profile(const std::string& name_or_path);
geo::SpindleProfile profile_from_config(const ConfigMap& m, const std::string& context);

pneumo::PneumaticCircuit circuit_from_config(const ConfigMap& m, const std::string& context);
design::DesignConstraints constraints_from_config(const ConfigMap& m, const std::string& context);

struct ArmConfig {
    double body_mass_kg = 65.4;
    double height_cm = 166.9;
    double load_kg = 0.0;
    biomech::AnthroCoefficients coeffs;
};

ArmConfig arm_from_config(const ConfigMap& m, const std::string& context);

} // namespace exo::io
