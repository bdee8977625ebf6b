#pragma once

#include <array>
#include <complex>

#include "qhybrid/dynamics.hpp"

namespace qhybrid {

struct StabilityReport {
    double max_real_eigenvalue = 0.0;
    bool stable = false;
    /// Stable, but the margin lies within the band treated as marginal.
    bool marginal = false;
    std::array<std::complex<double>, 8> eigenvalues{};
};

/// Spectral stability test: stable iff every eigenvalue of `a` has a strictly
/// negative real part. When `marginal_scale` > 0, stable points with
/// max Re(lambda) >= -1e-9 * marginal_scale are flagged as marginal.
StabilityReport stability(const Matrix8& a, double marginal_scale = 0.0);

/// Symmetric covariance matrix V_ij = <u_i u_j + u_j u_i>/2 of the eight
/// quadratures, vacuum variance 1/2.
class CovarianceMatrix {
public:
    CovarianceMatrix() : v_(Matrix8::Zero()) {}
    explicit CovarianceMatrix(const Matrix8& v) : v_(v) {}

    const Matrix8& matrix() const noexcept { return v_; }
    double operator()(int i, int j) const { return v_(i, j); }

    /// max |V - V^T| / max |V|; 0 for an exactly symmetric matrix.
    double asymmetry() const;
    /// Smallest eigenvalue of V (positive semidefinite when >= 0).
    double min_eigenvalue() const;
    /// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega. The state is
    /// physical (uncertainty principle) iff this is >= 0.
    double uncertainty_margin() const;

private:
    Matrix8 v_;
};

/// Solves A V + V A^T = -D for symmetric V. Throws ContractError when `a`
/// is not Hurwitz (the message names the offending eigenvalue) and
/// NumericalError when the linear system is singular.
CovarianceMatrix solve_lyapunov(const Matrix8& a, const Matrix8& d);

/// ||A V + V A^T + D||_F / ||D||_F (absolute when D = 0).
double lyapunov_residual(const Matrix8& a, const Matrix8& d, const Matrix8& v);

/// Integrates dV/dt = A V + V A^T + D from V0 over [0, t_final] with fixed
/// RK4 steps of size dt (the last one shortened). Throws NumericalError on
/// blow-up, which indicates dt is too large.
CovarianceMatrix integrate_covariance(const Matrix8& a, const Matrix8& d, const CovarianceMatrix& v0,
                                      double t_final, double dt);

/// The 8x8 symplectic form built from 2x2 blocks [[0,1],[-1,0]].
Matrix8 symplectic_form();

}  // namespace qhybrid
