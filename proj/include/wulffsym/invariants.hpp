#pragma once

#include <span>
#include <vector>

#include "wulffsym/types.hpp"

namespace wulffsym {

// Elementary symmetric invariants of arbitrary (possibly non-symmetric) real
// matrices. S_k(A) is the sum of all k x k principal minors, S_0 = 1, and the
// Newton transformation S_k^{ij}(A) is the entrywise derivative dS_k/dA_ij.

/// k-th elementary symmetric function of a vector; sigma_0 = 1.
[[nodiscard]] double sigma_k(std::span<const double> lambda, int k);

/// S_k(A). Dispatches between minor enumeration (2k <= n) and the
/// characteristic-polynomial recursion (otherwise).
[[nodiscard]] double sk(const SquareMatrix& a, int k);

/// S_k(A) as the sum of determinants of the k x k principal submatrices.
[[nodiscard]] double sk_minors(const SquareMatrix& a, int k);

/// S_k(A) from the recursion T_1 = I, T_m = S_{m-1} I - T_{m-1} A^T,
/// S_m = <T_m, A> / m. O(k n^3).
[[nodiscard]] double sk_recursive(const SquareMatrix& a, int k);

/// All of S_0 .. S_n in one recursion pass.
[[nodiscard]] std::vector<double> sk_all(const SquareMatrix& a);

/// Generalized Kronecker symbol delta^{upper}_{lower}: +-1 when the lower
/// indices are distinct and the upper tuple is an even/odd permutation of
/// them, 0 otherwise.
[[nodiscard]] int generalized_kronecker(std::span<const int> upper, std::span<const int> lower);

/// Literal delta-sum evaluation of S_k(A): (1/k!) sum delta^{j}_{i} A_{i1 j1}...A_{ik jk}.
/// Brute force; requires n <= 8 and k <= 5 (CostError otherwise).
[[nodiscard]] double sk_delta_oracle(const SquareMatrix& a, int k);

/// Newton transformation T with T_ij = S_k^{ij}(A), 1 <= k <= n, computed by
/// the recursion S_k^{ij} = S_{k-1} delta_ij - sum_l S_{k-1}^{il} A_jl.
/// T is in general not symmetric.
[[nodiscard]] SquareMatrix newton_transform(const SquareMatrix& a, int k);

/// Delta-sum evaluation of the Newton transformation (same cost guard as
/// sk_delta_oracle).
[[nodiscard]] SquareMatrix newton_transform_delta_oracle(const SquareMatrix& a, int k);

/// Mixed discriminant S_k(A_1, ..., A_k), evaluated literally from the
/// delta-sum. Multilinear and totally symmetric in its arguments.
[[nodiscard]] double mixed_discriminant(std::span<const SquareMatrix> matrices);

}  // namespace wulffsym
