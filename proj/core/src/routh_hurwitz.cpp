#include "qhybrid/routh_hurwitz.hpp"

#include <cmath>

#include "qhybrid/errors.hpp"

namespace qhybrid {

std::vector<long double> characteristic_polynomial(const Matrix8& a, double scale) {
    if (!(scale > 0.0)) {
        throw ContractError("characteristic_polynomial: scale must be > 0");
    }
    using LMatrix = Eigen::Matrix<long double, 8, 8>;
    const LMatrix m = a.cast<long double>() / static_cast<long double>(scale);
    constexpr int n = 8;

    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k.
    std::vector<long double> c(n + 1, 0.0L);
    c[0] = 1.0L;
    LMatrix mk = LMatrix::Zero();
    for (int k = 1; k <= n; ++k) {
        mk = m * mk + c[static_cast<std::size_t>(k - 1)] * LMatrix::Identity();
        c[static_cast<std::size_t>(k)] = -(m * mk).trace() / static_cast<long double>(k);
    }
    return c;
}

RouthReport routh_hurwitz(const std::vector<long double>& coefficients) {
    if (coefficients.size() < 2 || coefficients.front() == 0.0L) {
        throw ContractError("routh_hurwitz: need a polynomial of degree >= 1 with nonzero leading term");
    }
    const std::size_t degree = coefficients.size() - 1;
    const std::size_t width = degree / 2 + 1;

    // Normalize to a positive leading coefficient.
    const long double sign = coefficients.front() > 0 ? 1.0L : -1.0L;
    std::vector<long double> prev(width, 0.0L), curr(width, 0.0L);
    for (std::size_t i = 0; i <= degree; ++i) {
        (i % 2 == 0 ? prev : curr)[i / 2] = sign * coefficients[i];
    }

    RouthReport r;
    r.first_column.push_back(prev[0]);
    r.first_column.push_back(curr[0]);
    for (std::size_t row = 2; row <= degree; ++row) {
        if (curr[0] == 0.0L) {
            r.degenerate = true;
            break;
        }
        std::vector<long double> next(width, 0.0L);
        for (std::size_t j = 0; j + 1 < width; ++j) {
            next[j] = (curr[0] * prev[j + 1] - prev[0] * curr[j + 1]) / curr[0];
        }
        prev = std::move(curr);
        curr = std::move(next);
        r.first_column.push_back(curr[0]);
    }

    for (std::size_t i = 0; i < r.first_column.size(); ++i) {
        if (r.first_column[i] == 0.0L) {
            r.degenerate = true;
        }
        if (i > 0 && (r.first_column[i] > 0) != (r.first_column[i - 1] > 0)) {
            ++r.sign_changes;
        }
    }
    r.stable = !r.degenerate && r.sign_changes == 0;
    return r;
}

RouthReport routh_hurwitz_stability(const Matrix8& a) {
    const double scale = a.cwiseAbs().maxCoeff();
    return routh_hurwitz(characteristic_polynomial(a, scale > 0.0 ? scale : 1.0));
}

}  // namespace qhybrid
