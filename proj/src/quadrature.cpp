#include "wulffsym/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "wulffsym/error.hpp"

namespace wulffsym {

GaussRule gauss_legendre(int n)
{
    if (n < 1) {
        throw DomainError("Gauss-Legendre rule needs n >= 1");
    }
    GaussRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return rule;
}

GaussRule gauss_legendre(int n, double a, double b)
{
    GaussRule rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

DirectionSet direction_set_2d(int count)
{
    if (count < 3) {
        throw DomainError("2D direction set needs at least 3 rays");
    }
    DirectionSet set;
    set.azimuth = count;
    const double h = 2.0 * std::numbers::pi / count;
    for (int j = 0; j < count; ++j) {
        Vector d(2);
        d << std::cos(j * h), std::sin(j * h);
        set.directions.push_back(d);
        set.weights.push_back(h);
    }
    return set;
}

DirectionSet direction_set_3d(int polar, int azimuth)
{
    if (polar < 2 || azimuth < 3) {
        throw DomainError("3D direction set needs polar >= 2 and azimuth >= 3");
    }
    DirectionSet set;
    set.polar = polar;
    set.azimuth = azimuth;
    const GaussRule rule = gauss_legendre(polar);
    const double h = 2.0 * std::numbers::pi / azimuth;
    for (int i = 0; i < polar; ++i) {
        const double c = rule.nodes[static_cast<std::size_t>(i)];
        const double s = std::sqrt(1.0 - c * c);
        for (int j = 0; j < azimuth; ++j) {
            const double phi = (j + 0.5) * h;
            Vector d(3);
            d << s * std::cos(phi), s * std::sin(phi), c;
            set.directions.push_back(d);
            set.weights.push_back(rule.weights[static_cast<std::size_t>(i)] * h);
        }
    }
    return set;
}

RayResolution default_rays(int n)
{
    if (n == 2) {
        return RayResolution{2048, 0};
    }
    return RayResolution{256, 128};
}

DirectionSet direction_set(int n, const RayResolution& res)
{
    if (n == 2) {
        return direction_set_2d(res.azimuth);
    }
    if (n == 3) {
        return direction_set_3d(res.polar, res.azimuth);
    }
    throw CapabilityError("ray grids are implemented for n in {2,3}");
}

double stable_sum(const std::vector<double>& terms)
{
    double sum = 0.0;
    double comp = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    return sum + comp;
}

}  // namespace wulffsym
