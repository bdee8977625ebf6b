#include "qhybrid/pipeline.hpp"

#include "qhybrid/errors.hpp"

namespace qhybrid {

std::string_view to_string(PointStatus s) {
    switch (s) {
        case PointStatus::Ok: return "ok";
        case PointStatus::Unstable: return "unstable";
        case PointStatus::SolverFailed: return "solver-failed";
    }
    return "?";
}

PointEvaluation evaluate_point(const ParameterSet& params, std::span<const Bipartition> bipartitions,
                               const MeanFieldOptions& solver) {
    params.validate();
    PointEvaluation out;
    try {
        if (params.mode == Mode::Physical) {
            out.steady_state = solve_steady_state(params.physical, solver);
            out.effective = effective_from_physical(params.physical, out.steady_state->state);
        } else {
            out.effective = params.resolved_effective();
        }
        out.drift = build_drift(out.effective);
        out.diffusion = build_diffusion(out.effective, params.lc_noise_factor);
        out.stability = stability(out.drift, out.effective.omega_m);
        if (!out.stability->stable) {
            out.status = PointStatus::Unstable;
            out.message = "drift matrix has an eigenvalue with non-negative real part";
            return out;
        }
        out.covariance = solve_lyapunov(out.drift, out.diffusion);
        for (const Bipartition& b : bipartitions) {
            out.entanglement.push_back(log_negativity(extract_bipartition(*out.covariance, b), b));
        }
        out.status = PointStatus::Ok;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        out.status = PointStatus::SolverFailed;
        out.message = e.what();
        out.entanglement.clear();
    }
    return out;
}

}  // namespace qhybrid
