#pragma once

#include <Eigen/Core>

#include "qhybrid/dynamics.hpp"
#include "qhybrid/lyapunov.hpp"

namespace qhybrid {

using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;

/// Two-mode reduction V_S = [[V_A, V_C], [V_C^T, V_B]] of the full covariance.
struct ReducedCovariance {
    Matrix2 a = Matrix2::Zero();
    Matrix2 b = Matrix2::Zero();
    Matrix2 c = Matrix2::Zero();

    Matrix4 full() const;
    static ReducedCovariance from_full(const Matrix4& vs);
};

struct EntanglementReport {
    Bipartition bipartition;
    double eta_minus = 0.0;
    double log_negativity = 0.0;
    double sigma = 0.0;
    double det_vs = 0.0;
};

/// Rows/columns of the two subsystems, first subsystem in the A block.
ReducedCovariance extract_bipartition(const CovarianceMatrix& v, const Bipartition& b);

/// det V_A + det V_B - 2 det V_C.
double sigma_invariant(const ReducedCovariance& rc);

/// Smallest symplectic eigenvalue of the partially transposed two-mode state,
/// from the closed form in (Sigma, det V_S). With vacuum variance 1/2 the
/// state is entangled iff this is < 1/2. Throws NumericalError when the
/// discriminant Sigma^2 - 4 det V_S is below -1e-12 * max(1, Sigma^2).
double smallest_symplectic_eigenvalue(const ReducedCovariance& rc);

/// E_N = max(0, -ln(2 eta_minus)); 2 eta_minus within 16 ulp of 1 counts as separable.
EntanglementReport log_negativity(const ReducedCovariance& rc, const Bipartition& b = {});

}  // namespace qhybrid
