#include "wulffsym/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wulffsym/error.hpp"

namespace wulffsym {
namespace {

constexpr int kOracleMaxDim = 8;
constexpr int kOracleMaxOrder = 5;

void check_matrix(const SquareMatrix& a)
{
    if (a.rows() < 1 || a.rows() != a.cols()) {
        throw DomainError("matrix must be square with n >= 1");
    }
    if (!a.allFinite()) {
        throw DomainError("matrix entries must be finite");
    }
}

void check_order(int k, int lo, int hi, const char* what)
{
    if (k < lo || k > hi) {
        throw DomainError(std::string(what) + ": order k=" + std::to_string(k) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

void check_oracle_cost(int n, int k)
{
    if (n > kOracleMaxDim || k > kOracleMaxOrder) {
        throw CostError("delta-sum oracle limited to n <= 8, k <= 5 (got n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ")");
    }
}

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

// Visits every ordered tuple of `len` distinct indices from [0, n) that avoids
// `excluded` (pass -1 for none).
template <class Visit>
void for_each_distinct_tuple(int n, int len, int excluded, Visit&& visit)
{
    std::vector<int> tuple(static_cast<std::size_t>(len));
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    if (excluded >= 0) {
        used[static_cast<std::size_t>(excluded)] = 1;
    }
    auto recurse = [&](auto&& self, int pos) -> void {
        if (pos == len) {
            visit(tuple);
            return;
        }
        for (int i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) {
                continue;
            }
            used[static_cast<std::size_t>(i)] = 1;
            tuple[static_cast<std::size_t>(pos)] = i;
            self(self, pos + 1);
            used[static_cast<std::size_t>(i)] = 0;
        }
    };
    recurse(recurse, 0);
}

// Literal delta-sum over lower tuples i (distinct) and upper tuples j drawn from
// the same index set; delta vanishes for every other j, so those terms are not
// enumerated. factor(r, i_r, j_r) supplies the r-th matrix entry.
template <class Factor>
double delta_sum(int n, int k, Factor&& factor)
{
    double total = 0.0;
    for_each_distinct_tuple(n, k, -1, [&](const std::vector<int>& lower) {
        std::vector<int> upper = lower;
        std::sort(upper.begin(), upper.end());
        do {
            const int delta = generalized_kronecker(upper, lower);
            if (delta == 0) {
                continue;
            }
            double term = static_cast<double>(delta);
            for (int r = 0; r < k; ++r) {
                term *= factor(r, lower[static_cast<std::size_t>(r)], upper[static_cast<std::size_t>(r)]);
            }
            total += term;
        } while (std::next_permutation(upper.begin(), upper.end()));
    });
    return total;
}

}  // namespace

double sigma_k(std::span<const double> lambda, int k)
{
    const int n = static_cast<int>(lambda.size());
    check_order(k, 0, n, "sigma_k");
    for (double v : lambda) {
        if (!std::isfinite(v)) {
            throw DomainError("sigma_k: entries must be finite");
        }
    }
    std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j >= 1; --j) {
            e[static_cast<std::size_t>(j)] += lambda[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j) - 1];
        }
    }
    return e[static_cast<std::size_t>(k)];
}

double sk_minors(const SquareMatrix& a, int k)
{
    check_matrix(a);
    const int n = static_cast<int>(a.rows());
    check_order(k, 0, n, "sk");
    if (k == 0) {
        return 1.0;
    }
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    double total = 0.0;
    SquareMatrix minor(k, k);
    while (true) {
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) {
                minor(r, c) = a(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
            }
        }
        total += minor.determinant();
        // next combination in lexicographic order
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) {
            --pos;
        }
        if (pos < 0) {
            break;
        }
        ++idx[static_cast<std::size_t>(pos)];
        for (int r = pos + 1; r < k; ++r) {
            idx[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(r) - 1] + 1;
        }
    }
    return total;
}

double sk_recursive(const SquareMatrix& a, int k)
{
    check_matrix(a);
    const int n = static_cast<int>(a.rows());
    check_order(k, 0, n, "sk");
    if (k == 0) {
        return 1.0;
    }
    SquareMatrix t = SquareMatrix::Identity(n, n);
    double s = a.trace();
    for (int m = 2; m <= k; ++m) {
        t = s * SquareMatrix::Identity(n, n) - t * a.transpose();
        s = t.cwiseProduct(a).sum() / m;
    }
    return s;
}

std::vector<double> sk_all(const SquareMatrix& a)
{
    check_matrix(a);
    const int n = static_cast<int>(a.rows());
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    out[0] = 1.0;
    SquareMatrix t = SquareMatrix::Identity(n, n);
    double s = a.trace();
    out[1] = s;
    for (int m = 2; m <= n; ++m) {
        t = s * SquareMatrix::Identity(n, n) - t * a.transpose();
        s = t.cwiseProduct(a).sum() / m;
        out[static_cast<std::size_t>(m)] = s;
    }
    return out;
}

double sk(const SquareMatrix& a, int k)
{
    check_matrix(a);
    const int n = static_cast<int>(a.rows());
    check_order(k, 0, n, "sk");
    if (2 * k <= n) {
        return sk_minors(a, k);
    }
    return sk_recursive(a, k);
}

int generalized_kronecker(std::span<const int> upper, std::span<const int> lower)
{
    const std::size_t k = lower.size();
    if (upper.size() != k) {
        return 0;
    }
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = p + 1; q < k; ++q) {
            if (lower[p] == lower[q]) {
                return 0;
            }
        }
    }
    // perm[r] = position in `lower` of upper[r]
    std::vector<std::size_t> perm(k);
    std::vector<char> hit(k, 0);
    for (std::size_t r = 0; r < k; ++r) {
        const auto it = std::find(lower.begin(), lower.end(), upper[r]);
        if (it == lower.end()) {
            return 0;
        }
        const auto pos = static_cast<std::size_t>(it - lower.begin());
        if (hit[pos]) {
            return 0;
        }
        hit[pos] = 1;
        perm[r] = pos;
    }
    int inversions = 0;
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = p + 1; q < k; ++q) {
            if (perm[p] > perm[q]) {
                ++inversions;
            }
        }
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

double sk_delta_oracle(const SquareMatrix& a, int k)
{
    check_matrix(a);
    const int n = static_cast<int>(a.rows());
    check_order(k, 0, n, "sk_delta_oracle");
    check_oracle_cost(n, k);
    if (k == 0) {
        return 1.0;
    }
    const double sum = delta_sum(n, k, [&](int, int i, int j) { return a(i, j); });
    return sum / factorial(k);
}

SquareMatrix newton_transform(const SquareMatrix& a, int k)
{
    check_matrix(a);
    const int n = static_cast<int>(a.rows());
    check_order(k, 1, n, "newton_transform");
    SquareMatrix t = SquareMatrix::Identity(n, n);
    double s = a.trace();
    for (int m = 2; m <= k; ++m) {
        t = s * SquareMatrix::Identity(n, n) - t * a.transpose();
        s = t.cwiseProduct(a).sum() / m;
    }
    return t;
}

SquareMatrix newton_transform_delta_oracle(const SquareMatrix& a, int k)
{
    check_matrix(a);
    const int n = static_cast<int>(a.rows());
    check_order(k, 1, n, "newton_transform_delta_oracle");
    check_oracle_cost(n, k);
    SquareMatrix t = SquareMatrix::Zero(n, n);
    const double norm = factorial(k - 1);
    for (int i = 0; i < n; ++i) {
        // lower = (i_1..i_{k-1}, i); upper ranges over rearrangements of it
        for_each_distinct_tuple(n, k - 1, i, [&](const std::vector<int>& head) {
            std::vector<int> lower = head;
            lower.push_back(i);
            std::vector<int> upper = lower;
            std::sort(upper.begin(), upper.end());
            do {
                const int delta = generalized_kronecker(upper, lower);
                double term = static_cast<double>(delta);
                for (int r = 0; r + 1 < k; ++r) {
                    term *= a(lower[static_cast<std::size_t>(r)], upper[static_cast<std::size_t>(r)]);
                }
                t(i, upper.back()) += term;
            } while (std::next_permutation(upper.begin(), upper.end()));
        });
    }
    return t / norm;
}

double mixed_discriminant(std::span<const SquareMatrix> matrices)
{
    const int k = static_cast<int>(matrices.size());
    if (k < 1) {
        throw DomainError("mixed_discriminant: need at least one matrix");
    }
    for (const auto& m : matrices) {
        check_matrix(m);
        if (m.rows() != matrices.front().rows()) {
            throw DomainError("mixed_discriminant: matrices have mismatched dimensions");
        }
    }
    const int n = static_cast<int>(matrices.front().rows());
    check_order(k, 1, n, "mixed_discriminant");
    check_oracle_cost(n, k);
    const double sum = delta_sum(n, k, [&](int r, int i, int j) {
        return matrices[static_cast<std::size_t>(r)](i, j);
    });
    return sum / factorial(k);
}

}  // namespace wulffsym
