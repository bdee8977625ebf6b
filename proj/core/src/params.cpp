#include "qhybrid/params.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "qhybrid/constants.hpp"
#include "qhybrid/errors.hpp"
#include "qhybrid/meanfield.hpp"

namespace qhybrid {
namespace {

using PhysField = std::pair<std::string_view, double PhysicalParams::*>;
using EffField = std::pair<std::string_view, double EffectiveParams::*>;

constexpr std::array<PhysField, 17> kPhysicalFields{{
    {"cavity_length", &PhysicalParams::cavity_length},
    {"laser_wavelength", &PhysicalParams::laser_wavelength},
    {"laser_power", &PhysicalParams::laser_power},
    {"kappa", &PhysicalParams::kappa},
    {"omega_m", &PhysicalParams::omega_m},
    {"mirror_mass", &PhysicalParams::mirror_mass},
    {"gamma_m", &PhysicalParams::gamma_m},
    {"gamma_at", &PhysicalParams::gamma_at},
    {"gamma_lc", &PhysicalParams::gamma_lc},
    {"omega_lc", &PhysicalParams::omega_lc},
    {"inductance", &PhysicalParams::inductance},
    {"delta_at", &PhysicalParams::delta_at},
    {"delta_cav", &PhysicalParams::delta_cav},
    {"g_at_eff", &PhysicalParams::g_at_eff},
    {"g_lc_bare", &PhysicalParams::g_lc_bare},
    {"dc_bias_voltage", &PhysicalParams::dc_bias_voltage},
    {"temperature", &PhysicalParams::temperature},
}};

constexpr std::array<EffField, 13> kEffectiveFields{{
    {"omega_m", &EffectiveParams::omega_m},
    {"kappa", &EffectiveParams::kappa},
    {"gamma_m", &EffectiveParams::gamma_m},
    {"gamma_at", &EffectiveParams::gamma_at},
    {"gamma_lc", &EffectiveParams::gamma_lc},
    {"delta_cav_eff", &EffectiveParams::delta_cav_eff},
    {"delta_at", &EffectiveParams::delta_at},
    {"omega_lc_eff", &EffectiveParams::omega_lc_eff},
    {"g_om_eff", &EffectiveParams::g_om_eff},
    {"g_lc_eff", &EffectiveParams::g_lc_eff},
    {"g_at_eff", &EffectiveParams::g_at_eff},
    {"nbar_m", &EffectiveParams::nbar_m},
    {"nbar_lc", &EffectiveParams::nbar_lc},
}};

void require(bool ok, std::string_view key, const char* what) {
    if (!ok) {
        throw ConfigError(std::string(key), what);
    }
}

void require_positive(double v, std::string_view key) {
    require(std::isfinite(v) && v > 0.0, key, "must be finite and > 0");
}

void require_non_negative(double v, std::string_view key) {
    require(std::isfinite(v) && v >= 0.0, key, "must be finite and >= 0");
}

void require_finite(double v, std::string_view key) {
    require(std::isfinite(v), key, "must be finite");
}

}  // namespace

void PhysicalParams::validate() const {
    require_positive(cavity_length, "cavity_length");
    require_positive(laser_wavelength, "laser_wavelength");
    require_non_negative(laser_power, "laser_power");
    require_positive(kappa, "kappa");
    require_positive(omega_m, "omega_m");
    require_positive(mirror_mass, "mirror_mass");
    require_positive(gamma_m, "gamma_m");
    require_positive(gamma_at, "gamma_at");
    require_positive(gamma_lc, "gamma_lc");
    require_positive(omega_lc, "omega_lc");
    require_positive(inductance, "inductance");
    require_finite(delta_at, "delta_at");
    require_finite(delta_cav, "delta_cav");
    require_positive(g_at_eff, "g_at_eff");
    require_non_negative(g_lc_bare, "g_lc_bare");
    require_finite(dc_bias_voltage, "dc_bias_voltage");
    require_non_negative(temperature, "temperature");
    if (temperature_lc) {
        require_non_negative(*temperature_lc, "temperature_lc");
    }
}

void EffectiveParams::validate() const {
    require_positive(omega_m, "omega_m");
    require_positive(kappa, "kappa");
    require_positive(omega_lc_eff, "omega_lc_eff");
    require_non_negative(gamma_m, "gamma_m");
    require_non_negative(gamma_at, "gamma_at");
    require_non_negative(gamma_lc, "gamma_lc");
    require_finite(delta_cav_eff, "delta_cav_eff");
    require_finite(delta_at, "delta_at");
    require_finite(g_om_eff, "g_om_eff");
    require_finite(g_lc_eff, "g_lc_eff");
    require_finite(g_at_eff, "g_at_eff");
    require_non_negative(nbar_m, "nbar_m");
    require_non_negative(nbar_lc, "nbar_lc");
}

double thermal_occupation(double omega, double temperature) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw ContractError("thermal_occupation: omega must be > 0");
    }
    if (!(temperature >= 0.0)) {
        throw ContractError("thermal_occupation: temperature must be >= 0");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    const double x = constants::hbar * omega / (constants::boltzmann * temperature);
    return 1.0 / std::expm1(x);
}

double laser_frequency(const PhysicalParams& p) {
    return 2.0 * constants::pi * constants::speed_of_light / p.laser_wavelength;
}

double drive_amplitude(const PhysicalParams& p) {
    if (!(p.laser_power >= 0.0) || !(p.kappa > 0.0)) {
        throw ContractError("drive_amplitude: requires laser_power >= 0 and kappa > 0");
    }
    return std::sqrt(2.0 * p.laser_power * p.kappa / (constants::hbar * laser_frequency(p)));
}

double mirror_zero_point(const PhysicalParams& p) {
    return std::sqrt(constants::hbar / (p.mirror_mass * p.omega_m));
}

double optomechanical_coupling(const PhysicalParams& p) {
    const double omega_cav = laser_frequency(p) + p.delta_cav;
    return omega_cav * mirror_zero_point(p) / p.cavity_length;
}

double charge_zero_point(const PhysicalParams& p) {
    return std::sqrt(constants::hbar / (p.inductance * p.omega_lc));
}

double bias_drive(const PhysicalParams& p) {
    return charge_zero_point(p) * p.dc_bias_voltage / constants::hbar;
}

EffectiveParams effective_from_physical(const PhysicalParams& p, const SteadyState& ss) {
    const double g_om = optomechanical_coupling(p);
    EffectiveParams e;
    e.omega_m = p.omega_m;
    e.kappa = p.kappa;
    e.gamma_m = p.gamma_m;
    e.gamma_at = p.gamma_at;
    e.gamma_lc = p.gamma_lc;
    e.delta_at = p.delta_at;
    e.g_at_eff = p.g_at_eff;
    e.delta_cav_eff = p.delta_cav - g_om * ss.x_s;
    e.omega_lc_eff = p.omega_lc + 2.0 * p.g_lc_bare * ss.x_s;
    e.g_om_eff = std::sqrt(2.0) * std::abs(ss.a_s) * g_om;
    e.g_lc_eff = 2.0 * ss.q_s * p.g_lc_bare;
    e.nbar_m = thermal_occupation(p.omega_m, p.temperature);
    e.nbar_lc = thermal_occupation(e.omega_lc_eff, p.lc_temperature());
    return e;
}

std::string_view to_string(Mode m) {
    return m == Mode::Effective ? "EFFECTIVE" : "PHYSICAL";
}

EffectiveParams ParameterSet::resolved_effective() const {
    if (mode != Mode::Effective) {
        throw ContractError("resolved_effective: parameter set is in PHYSICAL mode");
    }
    EffectiveParams e = effective;
    if (temperature) {
        e.nbar_m = thermal_occupation(e.omega_m, *temperature);
        e.nbar_lc = thermal_occupation(e.omega_lc_eff, temperature_lc.value_or(*temperature));
    }
    return e;
}

void ParameterSet::set(std::string_view name, double value) {
    if (name == "lc_noise_factor") {
        lc_noise_factor = value;
        return;
    }
    if (mode == Mode::Effective) {
        if (name == "temperature") {
            temperature = value;
            return;
        }
        if (name == "temperature_lc") {
            temperature_lc = value;
            return;
        }
        for (const auto& [key, member] : kEffectiveFields) {
            if (key == name) {
                effective.*member = value;
                return;
            }
        }
    } else {
        if (name == "temperature_lc") {
            physical.temperature_lc = value;
            return;
        }
        for (const auto& [key, member] : kPhysicalFields) {
            if (key == name) {
                physical.*member = value;
                return;
            }
        }
    }
    throw ConfigError(std::string(name),
                      "unknown parameter for " + std::string(to_string(mode)) + " mode");
}

double ParameterSet::get(std::string_view name) const {
    if (name == "lc_noise_factor") {
        return lc_noise_factor;
    }
    if (mode == Mode::Effective) {
        if (name == "temperature" && temperature) {
            return *temperature;
        }
        if (name == "temperature_lc" && (temperature_lc || temperature)) {
            return temperature_lc.value_or(*temperature);
        }
        for (const auto& [key, member] : kEffectiveFields) {
            if (key == name) {
                return effective.*member;
            }
        }
    } else {
        if (name == "temperature_lc") {
            return physical.lc_temperature();
        }
        for (const auto& [key, member] : kPhysicalFields) {
            if (key == name) {
                return physical.*member;
            }
        }
    }
    throw ConfigError(std::string(name),
                      "unknown parameter for " + std::string(to_string(mode)) + " mode");
}

double ParameterSet::omega_m() const {
    return mode == Mode::Effective ? effective.omega_m : physical.omega_m;
}

void ParameterSet::validate() const {
    require(std::isfinite(lc_noise_factor) && lc_noise_factor >= 0.0, "lc_noise_factor",
            "must be finite and >= 0");
    if (mode == Mode::Physical) {
        physical.validate();
        return;
    }
    effective.validate();
    if (temperature) {
        require_non_negative(*temperature, "temperature");
    }
    if (temperature_lc) {
        require_non_negative(*temperature_lc, "temperature_lc");
    }
}

std::vector<std::string> parameter_names(Mode m) {
    std::vector<std::string> out;
    if (m == Mode::Effective) {
        for (const auto& f : kEffectiveFields) {
            out.emplace_back(f.first);
        }
        out.emplace_back("temperature");
    } else {
        for (const auto& f : kPhysicalFields) {
            out.emplace_back(f.first);
        }
    }
    out.emplace_back("temperature_lc");
    out.emplace_back("lc_noise_factor");
    return out;
}

}  // namespace qhybrid
