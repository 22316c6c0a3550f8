#pragma once

#include <Eigen/Dense>

namespace wulffsym {

/// Column vector in R^n.
using Vector = Eigen::VectorXd;

/// Dense n x n real matrix. Not assumed symmetric anywhere in the library.
using SquareMatrix = Eigen::MatrixXd;

/// Binomial coefficient C(n, k) as a double; zero outside 0 <= k <= n.
[[nodiscard]] inline double binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0.0;
    }
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return result;
}

}  // namespace wulffsym
