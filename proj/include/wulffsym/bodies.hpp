#pragma once

#include <vector>

#include "wulffsym/anisotropy.hpp"
#include "wulffsym/field.hpp"
#include "wulffsym/quadrature.hpp"

namespace wulffsym {

/// A sampled level set Sigma_t = {u = t} of a quasi-convex field, obtained by
/// shooting rays from the anchor. All per-point arrays share one index.
struct LevelSetSample {
    double level = 0.0;
    int dimension = 0;
    double kappa_n = 0.0;  // Wulff volume of the norm used for sampling
    Vector anchor;
    std::vector<Vector> points;
    std::vector<Vector> normals;           // Euclidean unit outer normals
    std::vector<double> f_of_nu;           // F(nu)
    std::vector<double> gradient_norms;    // F(grad u)
    std::vector<double> euclidean_gradient_norms;  // |grad u|
    std::vector<std::vector<double>> curvatures;   // curvatures[j][i] = S_j(kappa_F), j = 0..n-1
    std::vector<double> weights;           // surface measure (H^{n-1}) weights

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    /// H^{n-1}(Sigma_t) up to quadrature error.
    [[nodiscard]] double area() const;
};

/// Samples Sigma_t for m < t <= 0 along the deterministic direction grid.
/// Surface weights come from the star-shaped parametrization x = x0 + s(w) w:
/// dH = s^{n-1} |grad u| / <grad u, w> dw. Throws DomainError for t outside
/// (m, 0] and DegenerateLevelError when grad u vanishes on the sample.
[[nodiscard]] LevelSetSample sample_level_set(const Norm& f, const Field& u, double t,
                                              const RayResolution& rays);

/// Anisotropic mixed volume W_{k,F}(Omega_t) of the sampled body. For
/// 1 <= k <= n-1: [1/(n C(n-1,k-1))] int S_{k-1}(kappa_F) F(nu) dH; for k = 0
/// the enclosed volume (1/n) int <x - x0, nu> dH.
[[nodiscard]] double mixed_volume(const LevelSetSample& sample, int k);

/// d/dt W_{k,F}(Omega_t) = [1/C(n,k)] int S_k(kappa_F) F(nu) / F(grad u) dH, 0 <= k <= n-1.
[[nodiscard]] double mixed_volume_rate(const LevelSetSample& sample, int k);

/// zeta_{k,F} = (W_{k,F} / kappa_n)^{1/(n-k)}, 0 <= k <= n-1.
[[nodiscard]] double mean_radius(const LevelSetSample& sample, int k);

/// d/dt zeta_{k,F}(Omega_t) from mixed_volume_rate by the chain rule.
[[nodiscard]] double mean_radius_rate(const LevelSetSample& sample, int k);

struct AfMargin {
    int lower = 0;   // l
    int higher = 0;  // k > l
    double margin = 0.0;  // zeta_k - zeta_l
};

/// zeta_k - zeta_l for every 0 <= l < k <= n-1 (nonnegative for convex bodies).
[[nodiscard]] std::vector<AfMargin> af_margins(const LevelSetSample& sample);

}  // namespace wulffsym
