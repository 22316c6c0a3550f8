#pragma once

#include <cstddef>
#include <vector>

#include "wulffsym/types.hpp"

namespace wulffsym {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on the Legendre recurrence).
[[nodiscard]] GaussRule gauss_legendre(int n);

/// The same rule mapped to [a, b].
[[nodiscard]] GaussRule gauss_legendre(int n, double a, double b);

/// Unit directions with solid-angle weights (sum of weights = |S^{n-1}|).
struct DirectionSet {
    std::vector<Vector> directions;
    std::vector<double> weights;
    int polar = 0;    // 3D only: Gauss-Legendre nodes in cos(theta)
    int azimuth = 0;  // uniform angles

    [[nodiscard]] std::size_t size() const noexcept { return directions.size(); }
};

/// count uniform angles theta_j = 2 pi j / count.
[[nodiscard]] DirectionSet direction_set_2d(int count);

/// Gauss-Legendre in cos(theta) times uniform azimuth.
[[nodiscard]] DirectionSet direction_set_3d(int polar, int azimuth);

/// Angular resolution of a ray grid. In 2D only `azimuth` is used.
struct RayResolution {
    int azimuth = 2048;
    int polar = 128;
};

/// Library default: 2048 rays in 2D, 128 x 256 in 3D.
[[nodiscard]] RayResolution default_rays(int n);

[[nodiscard]] DirectionSet direction_set(int n, const RayResolution& res);

/// Compensated (Neumaier) summation in index order.
[[nodiscard]] double stable_sum(const std::vector<double>& terms);

}  // namespace wulffsym
