#pragma once

#include "wulffsym/anisotropy.hpp"
#include "wulffsym/field.hpp"
#include "wulffsym/types.hpp"

namespace wulffsym {

/// Anisotropic Hessian A_F[u]_ij = sum_l (F^2/2)_il(grad u) u_lj, i.e. the
/// Jacobian of x -> grad(F^2/2)(grad u(x)). Equal to the plain Hessian for the
/// euclidean norm; the zero matrix where grad u = 0 otherwise.
[[nodiscard]] SquareMatrix aniso_hessian(const Norm& f, const FieldJet& jet);

/// A = B + C with B_ij = F F_il u_lj and C_ij = F_i F_l u_lj (grad u != 0).
struct AnisoHessianSplit {
    SquareMatrix a;
    SquareMatrix b;
    SquareMatrix c;
};
[[nodiscard]] AnisoHessianSplit aniso_hessian_split(const Norm& f, const FieldJet& jet);

/// S_{k,F}[u](x) = S_k(A_F[u](x)).
[[nodiscard]] double sk_field(const Norm& f, const Field& u, const Vector& x, int k);

/// Newton transformation of the anisotropic Hessian, S_k^{ij}[u].
[[nodiscard]] SquareMatrix newton_field(const Norm& f, const FieldJet& jet, int k);

/// The level-set curvature matrix sum_l F_il(grad u) u_lj. Its k-th invariant
/// is the anisotropic k-th mean curvature of the level set through x.
[[nodiscard]] SquareMatrix curvature_matrix(const Norm& f, const FieldJet& jet);

/// Anisotropic k-th mean curvature S_k(kappa_F) of the level set through a
/// point, 0 <= k <= n-1, evaluated both as S_k(curvature_matrix) (returned as
/// `value`) and as F^{-(k+1)} sum_ij S_{k+1}^{ij}[u] u_j F_i (`via_newton`).
struct LevelCurvature {
    double value = 0.0;
    double via_newton = 0.0;
    double discrepancy = 0.0;  // |value - via_newton| / max(|value|, |via_newton|)
};
[[nodiscard]] LevelCurvature level_curvature(const Norm& f, const FieldJet& jet, int k);
[[nodiscard]] LevelCurvature level_curvature(const Norm& f, const Field& u, const Vector& x, int k);

/// I_{k,F}[u] = int_Omega (-u) S_{k,F}[u] dx by volume quadrature.
[[nodiscard]] double hessian_integral(const Norm& f, const Field& u, int k, const VolumeGrid& grid);
[[nodiscard]] double hessian_integral(const Norm& f, const Field& u, int k);

/// Level grid for co-area integration: `count` Gauss levels in the variable
/// s with t = m + |m| s^2, s in [sqrt(bottom_offset), 1], so that the skipped
/// band [m, m + bottom_offset |m|] holds the degenerate minimum.
struct LevelGrid {
    int count = 48;
    RayResolution rays;
    double bottom_offset = 1e-3;
};
[[nodiscard]] LevelGrid default_level_grid(int n);

struct CoareaResult {
    double value = 0.0;
    int levels_used = 0;
    int levels_skipped = 0;
};

/// (1/k) int_m^0 int_{Sigma_t} S_{k-1}(kappa_F) F(grad u)^k F(nu) dH dt.
[[nodiscard]] CoareaResult hessian_integral_coarea(const Norm& f, const Field& u, int k,
                                                   const LevelGrid& levels);

/// I_{k,p,F}[u] = int_Omega sum_ij S_k^{ij}[u] F^{p-k} F_i u_j dx (F at grad u).
[[nodiscard]] double generalized_integral(const Norm& f, const Field& u, int k, double p,
                                          const VolumeGrid& grid);
[[nodiscard]] double generalized_integral(const Norm& f, const Field& u, int k, double p);

}  // namespace wulffsym
