#include "wulffsym/bodies.hpp"

#include <cmath>
#include <string>

#include "wulffsym/error.hpp"
#include "wulffsym/field_ops.hpp"
#include "wulffsym/invariants.hpp"
#include "wulffsym/parallel.hpp"

namespace wulffsym {
namespace {

void check_order(int k, int lo, int hi, const char* what)
{
    if (k < lo || k > hi) {
        throw DomainError(std::string(what) + ": order k=" + std::to_string(k) + " out of range");
    }
}

}  // namespace

double LevelSetSample::area() const
{
    return stable_sum(weights);
}

LevelSetSample sample_level_set(const Norm& f, const Field& u, double t, const RayResolution& rays)
{
    const int n = u.dimension();
    if (f.dimension() != n) {
        throw DomainError("sample_level_set: norm and field dimensions differ");
    }
    if (!(t > u.min_value()) || t > u.max_value()) {
        throw DomainError("sample_level_set: level outside (m, 0]");
    }
    const DirectionSet dirs = direction_set(n, rays);
    const std::size_t count = dirs.size();

    LevelSetSample out;
    out.level = t;
    out.dimension = n;
    try {
        out.kappa_n = f.wulff_volume();
    } catch (const CapabilityError&) {
        out.kappa_n = -1.0;  // mean radii unavailable; mixed volumes still work
    }
    out.anchor = u.anchor();
    out.points.resize(count);
    out.normals.resize(count);
    out.f_of_nu.resize(count);
    out.gradient_norms.resize(count);
    out.euclidean_gradient_norms.resize(count);
    out.weights.resize(count);
    out.curvatures.assign(static_cast<std::size_t>(n), std::vector<double>(count));

    parallel_for(count, [&](std::size_t i) {
        const Vector& w = dirs.directions[i];
        const double s = ray_root(u, w, t);
        const Vector x = u.anchor() + s * w;
        const FieldJet jet = u.jet(x);
        const double grad_norm = jet.gradient.norm();
        const double radial_slope = jet.gradient.dot(w);
        if (grad_norm < 1e-10 || !(radial_slope > 0.0)) {
            throw DegenerateLevelError("sample_level_set: degenerate level t=" + std::to_string(t));
        }
        const NormJet fj = f.eval_jet(jet.gradient);
        out.points[i] = x;
        out.normals[i] = jet.gradient / grad_norm;
        out.gradient_norms[i] = fj.value;
        out.euclidean_gradient_norms[i] = grad_norm;
        out.f_of_nu[i] = fj.value / grad_norm;
        out.weights[i] = dirs.weights[i] * std::pow(s, n - 1) * grad_norm / radial_slope;
        const std::vector<double> invariants = sk_all(fj.hessian * jet.hessian);
        for (int j = 0; j < n; ++j) {
            out.curvatures[static_cast<std::size_t>(j)][i] = invariants[static_cast<std::size_t>(j)];
        }
    });
    return out;
}

double mixed_volume(const LevelSetSample& sample, int k)
{
    const int n = sample.dimension;
    check_order(k, 0, n - 1, "mixed_volume");
    std::vector<double> terms(sample.size());
    if (k == 0) {
        for (std::size_t i = 0; i < sample.size(); ++i) {
            terms[i] = sample.weights[i] * (sample.points[i] - sample.anchor).dot(sample.normals[i]);
        }
        return stable_sum(terms) / n;
    }
    const auto& curv = sample.curvatures[static_cast<std::size_t>(k - 1)];
    for (std::size_t i = 0; i < sample.size(); ++i) {
        terms[i] = sample.weights[i] * curv[i] * sample.f_of_nu[i];
    }
    return stable_sum(terms) / (n * binomial(n - 1, k - 1));
}

double mixed_volume_rate(const LevelSetSample& sample, int k)
{
    const int n = sample.dimension;
    check_order(k, 0, n - 1, "mixed_volume_rate");
    const auto& curv = sample.curvatures[static_cast<std::size_t>(k)];
    std::vector<double> terms(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        terms[i] = sample.weights[i] * curv[i] * sample.f_of_nu[i] / sample.gradient_norms[i];
    }
    return stable_sum(terms) / binomial(n, k);
}

double mean_radius(const LevelSetSample& sample, int k)
{
    const int n = sample.dimension;
    check_order(k, 0, n - 1, "mean_radius");
    if (!(sample.kappa_n > 0.0)) {
        throw CapabilityError("mean_radius: Wulff volume unavailable for this norm");
    }
    const double w = mixed_volume(sample, k);
    if (!(w > 0.0)) {
        throw NumericError("mean_radius: non-positive mixed volume");
    }
    return std::pow(w / sample.kappa_n, 1.0 / (n - k));
}

double mean_radius_rate(const LevelSetSample& sample, int k)
{
    const int n = sample.dimension;
    const double zeta = mean_radius(sample, k);
    // zeta^{n-k} kappa_n = W  =>  dzeta/dt = W' / ((n-k) kappa_n zeta^{n-k-1})
    return mixed_volume_rate(sample, k) / ((n - k) * sample.kappa_n * std::pow(zeta, n - k - 1));
}

std::vector<AfMargin> af_margins(const LevelSetSample& sample)
{
    const int n = sample.dimension;
    std::vector<double> zeta(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        zeta[static_cast<std::size_t>(k)] = mean_radius(sample, k);
    }
    std::vector<AfMargin> out;
    for (int l = 0; l < n; ++l) {
        for (int k = l + 1; k < n; ++k) {
            out.push_back({l, k, zeta[static_cast<std::size_t>(k)] - zeta[static_cast<std::size_t>(l)]});
        }
    }
    return out;
}

}  // namespace wulffsym
