#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhybrid/dynamics.hpp"
#include "qhybrid/entanglement.hpp"
#include "qhybrid/lyapunov.hpp"
#include "qhybrid/meanfield.hpp"
#include "qhybrid/params.hpp"

namespace qhybrid {

enum class PointStatus { Ok, Unstable, SolverFailed };

std::string_view to_string(PointStatus s);

/// Everything computed for one model point, from parameters to E_N.
struct PointEvaluation {
    PointStatus status = PointStatus::SolverFailed;
    std::string message;

    std::optional<SteadyStateResult> steady_state;  // PHYSICAL mode only
    EffectiveParams effective;
    Matrix8 drift = Matrix8::Zero();
    Matrix8 diffusion = Matrix8::Zero();
    std::optional<StabilityReport> stability;
    std::optional<CovarianceMatrix> covariance;
    /// One report per requested bipartition, in request order; empty unless Ok.
    std::vector<EntanglementReport> entanglement;
};

/// Runs mean field (PHYSICAL mode), builds A and D, tests stability, solves
/// the Lyapunov equation and evaluates E_N for each bipartition. Numerical
/// failures are reported through `status`, never thrown; invalid parameters
/// throw ConfigError.
PointEvaluation evaluate_point(const ParameterSet& params, std::span<const Bipartition> bipartitions,
                               const MeanFieldOptions& solver = {});

}  // namespace qhybrid
