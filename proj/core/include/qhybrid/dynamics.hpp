#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qhybrid/params.hpp"

namespace qhybrid {

/// 8x8 real matrix indexed in the quadrature order
/// u = (dx, dp, dX, dY, dx_c, dy_c, dq, dphi).
using Matrix8 = Eigen::Matrix<double, 8, 8>;

inline constexpr std::array<std::string_view, 8> kQuadratureNames{
    "dx", "dp", "dX", "dY", "dx_c", "dy_c", "dq", "dphi"};

/// Mechanical oscillator, cavity field, atomic ensemble, LC circuit.
enum class Subsystem { MO, CAV, AE, LC };

inline constexpr std::array<Subsystem, 4> kSubsystems{Subsystem::MO, Subsystem::CAV,
                                                      Subsystem::AE, Subsystem::LC};

std::string_view to_string(Subsystem s);
Subsystem parse_subsystem(std::string_view label);

/// Zero-based index of the position-like quadrature of `s`; the conjugate
/// one follows it.
constexpr int first_index(Subsystem s) {
    return 2 * static_cast<int>(s);
}

struct Bipartition {
    Subsystem first = Subsystem::MO;
    Subsystem second = Subsystem::AE;

    /// "MO-AE" style label.
    std::string label() const;
    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Parses "MO-AE". Throws ContractError for unknown or identical labels.
Bipartition parse_bipartition(std::string_view text);

/// All six unordered pairs of distinct subsystems.
std::vector<Bipartition> all_bipartitions();

/// The three pairs of macroscopic subsystems: MO-AE, MO-LC, AE-LC.
std::vector<Bipartition> macroscopic_bipartitions();

Matrix8 build_drift(const EffectiveParams& p);

/// Diagonal noise matrix. `lc_noise_factor` scales the flux-noise entry only
/// (1.0 reproduces the printed model).
Matrix8 build_diffusion(const EffectiveParams& p, double lc_noise_factor = 1.0);

}  // namespace qhybrid
