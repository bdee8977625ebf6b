#pragma once

#include <vector>

#include "qhybrid/dynamics.hpp"

namespace qhybrid {

/// Coefficients c_0..c_n of det(sI - A) = s^n + c_1 s^{n-1} + ... + c_n,
/// computed with the Faddeev-LeVerrier recursion on A / scale in extended
/// precision. c_0 = 1. Roots of this polynomial are eigenvalues of A / scale.
std::vector<long double> characteristic_polynomial(const Matrix8& a, double scale);

struct RouthReport {
    bool stable = false;
    /// A zero appeared in the first column; stability is at best marginal.
    bool degenerate = false;
    /// Sign changes in the first column = number of right-half-plane roots
    /// (when not degenerate).
    int sign_changes = 0;
    std::vector<long double> first_column;
};

/// Routh array test on a monic polynomial given highest power first.
RouthReport routh_hurwitz(const std::vector<long double>& coefficients);

/// Convenience: characteristic polynomial of A scaled by its largest entry,
/// then the Routh test.
RouthReport routh_hurwitz_stability(const Matrix8& a);

}  // namespace qhybrid
