#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qhybrid/errors.hpp"
#include "qhybrid/params.hpp"

namespace qhybrid {

/// Mean-field operator expectation values about which the dynamics is
/// linearized. Amplitudes and quadratures are dimensionless.
struct SteadyState {
    std::complex<double> a_s{};
    std::complex<double> c_s{};
    double q_s = 0.0;
    double x_s = 0.0;
    double p_s = 0.0;
    double phi_s = 0.0;
};

struct FixedPointReport {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct SteadyStateResult {
    SteadyState state;
    FixedPointReport report;
};

struct MeanFieldOptions {
    double tolerance = 1e-10;
    int max_iterations = 10000;
    /// Initial relaxation factor of the fixed-point map, in (0, 1].
    double damping = 1.0;
};

/// Thrown when the self-consistency loop does not settle. Carries the last
/// iterate so callers can inspect how far it got.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, SteadyStateResult last)
        : NumericalError(what), last_(last) {}
    const SteadyStateResult& last() const noexcept { return last_; }

private:
    SteadyStateResult last_;
};

/// Thrown when omega_lc + 2 G_LC x_s reaches zero during the iteration.
class FrequencyCollapse : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The steady state as a closed-form function of the mirror displacement.
/// All of a_s, c_s, q_s follow from x_s; `x_map` is the right-hand side of
/// the x_s relation evaluated there.
struct MeanFieldMap {
    explicit MeanFieldMap(const PhysicalParams& p);

    SteadyState state_at(double x_s) const;
    double x_map(double x_s) const;
    /// x_map(x) - x; its roots are the steady states.
    double scalar_residual(double x_s) const;

    double drive = 0.0;      // E
    double g_om = 0.0;       // single-photon optomechanical coupling
    double bias = 0.0;       // q0 Vbar / hbar
    PhysicalParams params;
};

/// Solves the five steady-state relations simultaneously. The root returned
/// is the one reached from x_s = 0 by continuation in the drive amplitude.
SteadyStateResult solve_steady_state(const PhysicalParams& p, const MeanFieldOptions& opt = {});

/// Damped Newton on the scalar x_s equation, started at `x_start`.
/// Cross-check for the fixed-point route.
SteadyStateResult solve_steady_state_newton(const PhysicalParams& p, double x_start = 0.0,
                                            const MeanFieldOptions& opt = {});

/// Max relative mismatch of the five relations re-evaluated at `ss`.
double verify_fixed_point(const PhysicalParams& p, const SteadyState& ss);

/// Locations of sign changes of the scalar residual on a uniform grid over
/// [x_lo, x_hi], refined by bisection. Several entries signal bistability.
std::vector<double> scan_roots(const PhysicalParams& p, double x_lo, double x_hi, int samples);

}  // namespace qhybrid
