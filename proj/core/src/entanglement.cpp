#include "qhybrid/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "qhybrid/errors.hpp"

namespace qhybrid {

namespace {
// Discriminant values above -tol * max(1, Sigma^2) are treated as roundoff.
constexpr double kDiscriminantTolerance = 1e-12;
// 2 eta_- this close to 1 is vacuum-level noise of the double-precision solve.
constexpr double kSeparableFloor = 16.0 * std::numeric_limits<double>::epsilon();
}  // namespace

Matrix4 ReducedCovariance::full() const {
    Matrix4 m;
    m << a, c, c.transpose(), b;
    return m;
}

ReducedCovariance ReducedCovariance::from_full(const Matrix4& vs) {
    ReducedCovariance rc;
    rc.a = vs.topLeftCorner<2, 2>();
    rc.b = vs.bottomRightCorner<2, 2>();
    rc.c = vs.topRightCorner<2, 2>();
    return rc;
}

ReducedCovariance extract_bipartition(const CovarianceMatrix& v, const Bipartition& b) {
    if (b.first == b.second) {
        throw ContractError("extract_bipartition: the two subsystems must differ");
    }
    const int i = first_index(b.first);
    const int j = first_index(b.second);
    const Matrix8& m = v.matrix();
    ReducedCovariance rc;
    rc.a = m.block<2, 2>(i, i);
    rc.b = m.block<2, 2>(j, j);
    rc.c = m.block<2, 2>(i, j);
    return rc;
}

double sigma_invariant(const ReducedCovariance& rc) {
    return rc.a.determinant() + rc.b.determinant() - 2.0 * rc.c.determinant();
}

namespace {

Matrix2 adjugate(const Matrix2& m) {
    Matrix2 r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

struct Invariants {
    double sigma;
    double det_vs;
    double disc;  // sigma^2 - 4 det V_S
};

// det V_S and the discriminant written so that every correlation term is
// quadratic in V_C; for weakly correlated modes this avoids the cancellation
// in sigma^2 - 4 det V_S.
Invariants invariants(const ReducedCovariance& rc) {
    const double da = rc.a.determinant();
    const double db = rc.b.determinant();
    const double dc = rc.c.determinant();
    const double cross = (adjugate(rc.b) * rc.c.transpose() * adjugate(rc.a) * rc.c).trace();
    Invariants inv;
    inv.sigma = da + db - 2.0 * dc;
    inv.det_vs = da * db + dc * dc - cross;
    inv.disc = (da - db) * (da - db) + 4.0 * (cross - dc * (da + db));
    return inv;
}

}  // namespace

double smallest_symplectic_eigenvalue(const ReducedCovariance& rc) {
    Invariants inv = invariants(rc);
    if (inv.disc < 0.0) {
        if (inv.disc < -kDiscriminantTolerance * std::max(1.0, inv.sigma * inv.sigma)) {
            throw NumericalError("smallest_symplectic_eigenvalue: negative discriminant " +
                                 std::to_string(inv.disc) + " (unphysical covariance)");
        }
        inv.disc = 0.0;
    }
    // eta_-^2 eta_+^2 = det V_S; dividing by the larger root avoids cancellation.
    const double eta_plus_sq = 0.5 * (inv.sigma + std::sqrt(inv.disc));
    if (!(eta_plus_sq > 0.0)) {
        return 0.0;
    }
    return std::sqrt(std::max(inv.det_vs, 0.0) / eta_plus_sq);
}

EntanglementReport log_negativity(const ReducedCovariance& rc, const Bipartition& b) {
    EntanglementReport r;
    r.bipartition = b;
    const Invariants inv = invariants(rc);
    r.sigma = inv.sigma;
    r.det_vs = inv.det_vs;
    r.eta_minus = smallest_symplectic_eigenvalue(rc);
    const double two_eta = 2.0 * r.eta_minus;
    r.log_negativity = two_eta >= 1.0 - kSeparableFloor ? 0.0 : -std::log(two_eta);
    return r;
}

}  // namespace qhybrid
