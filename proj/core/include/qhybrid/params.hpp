#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qhybrid {

struct SteadyState;

// All frequencies and rates are angular [rad/s]. Inputs quoted as
// "pi x 10^7 Hz" are transcribed as the number pi*1e7 without a further 2*pi.

/// Laboratory-level inputs. Used in PHYSICAL mode, where the mean-field
/// steady state fixes the effective couplings and shifted frequencies.
struct PhysicalParams {
    double cavity_length = 1e-3;        // m
    double laser_wavelength = 1064e-9;  // m
    double laser_power = 35e-3;         // W
    double kappa = 0.0;                 // rad/s
    double omega_m = 0.0;               // rad/s
    double mirror_mass = 10e-12;        // kg
    double gamma_m = 0.0;               // rad/s
    double gamma_at = 0.0;              // rad/s
    double gamma_lc = 0.0;              // rad/s
    double omega_lc = 0.0;              // rad/s
    double inductance = 1e-3;           // H
    double delta_at = 0.0;              // rad/s, omega_at - omega_l
    double delta_cav = 0.0;             // rad/s, omega_cav - omega_l
    double g_at_eff = 0.0;              // rad/s, sqrt(N) * G_at
    double g_lc_bare = 0.0;             // rad/s, coefficient of the q^2 x term
    double dc_bias_voltage = 0.0;       // V
    double temperature = 0.0;           // K
    std::optional<double> temperature_lc;  // K, defaults to `temperature`

    double lc_temperature() const { return temperature_lc.value_or(temperature); }

    /// Throws ConfigError naming the first offending field.
    void validate() const;
};

/// Coefficients of the linearized model: exactly the symbols of the drift
/// matrix plus the two bath occupations entering the diffusion matrix.
struct EffectiveParams {
    double omega_m = 0.0;
    double kappa = 0.0;
    double gamma_m = 0.0;
    double gamma_at = 0.0;
    double gamma_lc = 0.0;
    double delta_cav_eff = 0.0;
    double delta_at = 0.0;
    double omega_lc_eff = 0.0;
    double g_om_eff = 0.0;
    double g_lc_eff = 0.0;
    double g_at_eff = 0.0;
    double nbar_m = 0.0;
    double nbar_lc = 0.0;

    void validate() const;
};

/// Bose-Einstein occupation 1/(exp(hbar*omega/(k_B*T)) - 1); 0 at T = 0.
double thermal_occupation(double omega, double temperature);

/// Cavity drive amplitude E = sqrt(2 P kappa / (hbar omega_l)), omega_l = 2 pi c / lambda.
double drive_amplitude(const PhysicalParams& p);

double laser_frequency(const PhysicalParams& p);

/// Mirror zero-point fluctuation sqrt(hbar / (m omega_m)) [m].
double mirror_zero_point(const PhysicalParams& p);

/// Single-photon optomechanical coupling omega_cav * x0 / L [rad/s].
double optomechanical_coupling(const PhysicalParams& p);

/// Capacitor-charge zero-point fluctuation sqrt(hbar / (L omega_lc)) [C].
double charge_zero_point(const PhysicalParams& p);

/// The DC drive term q0 * Vbar / hbar of the flux equation [rad/s].
double bias_drive(const PhysicalParams& p);

EffectiveParams effective_from_physical(const PhysicalParams& p, const SteadyState& ss);

enum class Mode { Effective, Physical };

std::string_view to_string(Mode m);

/// A complete model point as read from a config file: either effective
/// coefficients (optionally with bath temperatures from which the occupations
/// are derived) or physical inputs.
struct ParameterSet {
    Mode mode = Mode::Effective;
    EffectiveParams effective;
    std::optional<double> temperature;
    std::optional<double> temperature_lc;
    PhysicalParams physical;
    double lc_noise_factor = 1.0;

    /// In EFFECTIVE mode returns `effective` with nbar_m / nbar_lc refreshed
    /// from the temperatures when they are set. Throws in PHYSICAL mode.
    EffectiveParams resolved_effective() const;

    /// Sets one named field. Names are the EffectiveParams / PhysicalParams
    /// field names plus `temperature`, `temperature_lc`, `lc_noise_factor`.
    /// Throws ConfigError for names that do not exist in the active mode.
    void set(std::string_view name, double value);
    double get(std::string_view name) const;

    /// omega_m of the active mode; used to normalize axes.
    double omega_m() const;

    void validate() const;
};

/// Field names accepted by ParameterSet::set for the given mode.
std::vector<std::string> parameter_names(Mode m);

}  // namespace qhybrid
