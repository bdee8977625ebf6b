#include "qhybrid/dynamics.hpp"

#include "qhybrid/errors.hpp"

namespace qhybrid {

std::string_view to_string(Subsystem s) {
    switch (s) {
        case Subsystem::MO: return "MO";
        case Subsystem::CAV: return "CAV";
        case Subsystem::AE: return "AE";
        case Subsystem::LC: return "LC";
    }
    return "?";
}

Subsystem parse_subsystem(std::string_view label) {
    for (Subsystem s : kSubsystems) {
        if (to_string(s) == label) {
            return s;
        }
    }
    throw ContractError("unknown subsystem label '" + std::string(label) +
                        "' (expected MO, CAV, AE or LC)");
}

std::string Bipartition::label() const {
    return std::string(to_string(first)) + "-" + std::string(to_string(second));
}

Bipartition parse_bipartition(std::string_view text) {
    const auto dash = text.find('-');
    if (dash == std::string_view::npos) {
        throw ContractError("bipartition '" + std::string(text) + "' must look like MO-AE");
    }
    Bipartition b{parse_subsystem(text.substr(0, dash)), parse_subsystem(text.substr(dash + 1))};
    if (b.first == b.second) {
        throw ContractError("bipartition '" + std::string(text) + "' names the same subsystem twice");
    }
    return b;
}

std::vector<Bipartition> all_bipartitions() {
    std::vector<Bipartition> out;
    for (std::size_t i = 0; i < kSubsystems.size(); ++i) {
        for (std::size_t j = i + 1; j < kSubsystems.size(); ++j) {
            out.push_back({kSubsystems[i], kSubsystems[j]});
        }
    }
    return out;
}

std::vector<Bipartition> macroscopic_bipartitions() {
    return {{Subsystem::MO, Subsystem::AE}, {Subsystem::MO, Subsystem::LC}, {Subsystem::AE, Subsystem::LC}};
}

Matrix8 build_drift(const EffectiveParams& p) {
    Matrix8 a = Matrix8::Zero();
    // mirror
    a(0, 1) = p.omega_m;
    a(1, 0) = -p.omega_m;
    a(1, 1) = -p.gamma_m;
    a(1, 2) = p.g_om_eff;
    a(1, 6) = -p.g_lc_eff;
    // cavity quadratures
    a(2, 2) = -p.kappa;
    a(2, 3) = p.delta_cav_eff;
    a(2, 5) = p.g_at_eff;
    a(3, 0) = p.g_om_eff;
    a(3, 2) = -p.delta_cav_eff;
    a(3, 3) = -p.kappa;
    a(3, 4) = -p.g_at_eff;
    // atomic ensemble
    a(4, 3) = p.g_at_eff;
    a(4, 4) = -p.gamma_at;
    a(4, 5) = p.delta_at;
    a(5, 2) = -p.g_at_eff;
    a(5, 4) = -p.delta_at;
    a(5, 5) = -p.gamma_at;
    // LC circuit
    a(6, 7) = p.omega_lc_eff;
    a(7, 0) = -p.g_lc_eff;
    a(7, 6) = -p.omega_lc_eff;
    a(7, 7) = -p.gamma_lc;
    return a;
}

Matrix8 build_diffusion(const EffectiveParams& p, double lc_noise_factor) {
    Matrix8 d = Matrix8::Zero();
    d(1, 1) = p.gamma_m * (2.0 * p.nbar_m + 1.0);
    d(2, 2) = p.kappa;
    d(3, 3) = p.kappa;
    d(4, 4) = p.gamma_at;
    d(5, 5) = p.gamma_at;
    d(7, 7) = lc_noise_factor * p.gamma_lc * (2.0 * p.nbar_lc + 1.0);
    return d;
}

}  // namespace qhybrid
