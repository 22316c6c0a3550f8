#include "wulffsym/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wulffsym/error.hpp"
#include "wulffsym/parallel.hpp"
#include "wulffsym/types.hpp"

namespace wulffsym {
namespace {

void check_orders(int n, int k, int lo, const char* what)
{
    if (n < 1 || k < lo || k > n) {
        throw DomainError(std::string(what) + ": need " + std::to_string(lo) + " <= k <= n");
    }
}

const GaussRule& panel_rule()
{
    static const GaussRule rule = gauss_legendre(5);
    return rule;
}

// int_a^b g with 5-point Gauss
template <class G>
double gauss5(const G& g, double a, double b)
{
    const GaussRule& rule = panel_rule();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        acc += rule.weights[q] * g(mid + half * rule.nodes[q]);
    }
    return acc * half;
}

// composite over the profile intervals clipped to [0, r0]
template <class G>
double profile_quadrature(const MonotoneProfile& v, double r0, const G& g)
{
    const auto& x = v.abscissae();
    std::vector<double> terms;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = std::max(x[i], 0.0);
        const double b = std::min(x[i + 1], r0);
        if (b > a) {
            terms.push_back(gauss5(g, a, b));
        }
    }
    return stable_sum(terms);
}

void check_radial_profile(const MonotoneProfile& v, double r0, const char* what)
{
    if (!(r0 > 0.0) || !v.covers(0.0, r0)) {
        throw DomainError(std::string(what) + ": profile does not cover [0, r0]");
    }
    double vmax = 0.0;
    double dmax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        vmax = std::max(vmax, std::abs(v.values()[i]));
        dmax = std::max(dmax, std::abs(v.derivatives()[i]));
    }
    if (std::abs(v.value(r0)) > 1e-8 * (1.0 + vmax)) {
        throw DomainError(std::string(what) + ": v(r0) != 0");
    }
    if (std::abs(v.derivative(0.0)) > 1e-6 * (1.0 + dmax)) {
        throw DomainError(std::string(what) + ": v'(0) != 0");
    }
}

}  // namespace

double radial_sk(double dv, double ddv, double r, int n, int k)
{
    check_orders(n, k, 0, "radial_sk");
    if (!(r > 0.0)) {
        throw DomainError("radial_sk: r must be positive (use radial_sk_origin at r = 0)");
    }
    if (k == 0) {
        return 1.0;
    }
    // C(n-1,k-1) v'' (v'/r)^{k-1} + C(n-1,k) (v'/r)^k, i.e. r^{1-n} C(n-1,k-1) (r^{n-k} v'^k / k)'
    const double q = dv / r;
    return binomial(n - 1, k - 1) * ddv * std::pow(q, k - 1) + binomial(n - 1, k) * std::pow(q, k);
}

double radial_sk_origin(double ddv0, int n, int k)
{
    check_orders(n, k, 0, "radial_sk_origin");
    return binomial(n, k) * std::pow(ddv0, k);
}

double radial_hessian_integral(const MonotoneProfile& v, double r0, int n, int k, double kappa_n)
{
    check_orders(n, k, 1, "radial_hessian_integral");
    check_radial_profile(v, r0, "radial_hessian_integral");
    const double integral = profile_quadrature(v, r0, [&](double r) {
        return std::pow(r, n - k) * std::pow(v.derivative(r), k + 1);
    });
    return kappa_n * binomial(n, k) * integral;
}

double radial_generalized_integral(const MonotoneProfile& v, double r0, int n, int k, double p,
                                   double kappa_n)
{
    check_orders(n, k, 1, "radial_generalized_integral");
    if (!(p >= 1.0)) {
        throw DomainError("radial_generalized_integral: p must be >= 1");
    }
    check_radial_profile(v, r0, "radial_generalized_integral");
    const double integral = profile_quadrature(v, r0, [&](double r) {
        return std::pow(r, n - k) * std::pow(std::max(v.derivative(r), 0.0), p);
    });
    return n * kappa_n * binomial(n - 1, k - 1) * integral;
}

double radial_power_integral(const MonotoneProfile& v, double r0, int n, double p, double kappa_n)
{
    if (!(r0 > 0.0) || !v.covers(0.0, r0)) {
        throw DomainError("radial_power_integral: profile does not cover [0, r0]");
    }
    const double integral = profile_quadrature(v, r0, [&](double r) {
        return std::pow(std::abs(v.value(r)), p) * std::pow(r, n - 1);
    });
    return n * kappa_n * integral;
}

RadialSolution solve_radial(const MonotoneProfile& f_star, double outer_radius, int n, int k,
                            int nodes)
{
    check_orders(n, k, 1, "solve_radial");
    if (!(outer_radius > 0.0) || nodes < 8) {
        throw DomainError("solve_radial: need R > 0 and at least 8 nodes");
    }
    if (f_star.direction() != Monotonicity::decreasing) {
        throw InputError("solve_radial: source profile must be decreasing");
    }
    const auto& fv = f_star.values();
    const double fscale = std::max(1.0, std::abs(fv.front()));
    for (std::size_t i = 0; i < fv.size(); ++i) {
        if (fv[i] < -1e-12 * fscale) {
            throw InputError("solve_radial: negative source value " + std::to_string(fv[i]) +
                             " at r=" + std::to_string(f_star.abscissae()[i]));
        }
    }
    const double support = f_star.back();
    if (f_star.front() > 0.0) {
        throw DomainError("solve_radial: source profile must start at r = 0");
    }
    auto source = [&](double r) { return r <= support ? std::max(f_star.value(r), 0.0) : 0.0; };
    // int_a^b f tau^{n-1}, split at the support edge so each piece is smooth
    auto inner = [&](double a, double b) {
        auto g = [&](double tau) { return source(tau) * std::pow(tau, n - 1); };
        if (a < support && support < b) {
            return gauss5(g, a, support) + gauss5(g, support, b);
        }
        return gauss5(g, a, b);
    };

    RadialSolution sol;
    sol.dimension = n;
    sol.order = k;
    sol.outer_radius = outer_radius;
    const std::size_t count = static_cast<std::size_t>(nodes);
    const double h = outer_radius / static_cast<double>(count - 1);
    sol.radii.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        sol.radii[i] = h * static_cast<double>(i);
    }
    sol.radii.back() = outer_radius;

    std::vector<double> cumulative(count, 0.0);
    for (std::size_t i = 1; i < count; ++i) {
        cumulative[i] = cumulative[i - 1] + inner(sol.radii[i - 1], sol.radii[i]);
    }
    const double c = std::pow(n / binomial(n, k), 1.0 / k);
    auto slope = [&](double s, double g) {
        if (s <= 0.0) {
            return 0.0;
        }
        double base = g / std::pow(s, n - k);
        if (base < 0.0) {
            ++sol.clipped;
            base = 0.0;
        }
        return c * std::pow(base, 1.0 / k);
    };
    sol.slopes.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        sol.slopes[i] = slope(sol.radii[i], cumulative[i]);
    }
    // v(r) = -int_r^R v'(s) ds, panel by panel from the outside in
    std::vector<double> panel(count - 1);
    const GaussRule& rule = panel_rule();
    for (std::size_t i = 0; i + 1 < count; ++i) {
        const double a = sol.radii[i];
        const double b = sol.radii[i + 1];
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = mid + half * rule.nodes[q];
            acc += rule.weights[q] * slope(s, cumulative[i] + inner(a, s));
        }
        panel[i] = acc * half;
    }
    sol.values.assign(count, 0.0);
    for (std::size_t i = count - 1; i-- > 0;) {
        sol.values[i] = sol.values[i + 1] - panel[i];
    }
    sol.profile = MonotoneProfile(sol.radii, sol.values, sol.slopes, Monotonicity::increasing);
    return sol;
}

double back_substitution_residual(const RadialSolution& sol, const MonotoneProfile& f_star, int margin)
{
    const std::size_t count = sol.radii.size();
    const double h = sol.radii[1] - sol.radii[0];
    const double support = f_star.back();
    const auto m = static_cast<std::size_t>(std::max(margin, 1));
    double worst = 0.0;
    for (std::size_t i = m; i + m < count; ++i) {
        const double r = sol.radii[i];
        if (std::abs(r - support) <= static_cast<double>(m) * h) {
            continue;
        }
        const double ddv = (sol.slopes[i + 1] - sol.slopes[i - 1]) / (2.0 * h);
        const double lhs = radial_sk(sol.slopes[i], ddv, r, sol.dimension, sol.order);
        const double f = r <= support ? f_star.value(r) : 0.0;
        worst = std::max(worst, std::abs(lhs - f) / (1.0 + std::abs(f)));
    }
    return worst;
}

RearrangementResolution default_rearrangement_resolution(int n)
{
    RearrangementResolution res;
    if (n == 3) {
        res.rays = RayResolution{48, 24};
        res.shells = 96;
    } else {
        res.rays = RayResolution{512, 0};
    }
    return res;
}

MonotoneProfile rearrange(const std::function<double(const Vector&)>& f, const Field& u,
                          double kappa_n, const RearrangementResolution& res)
{
    const int n = u.dimension();
    if (!(kappa_n > 0.0) || res.shells < 1 || res.nodes < 2) {
        throw DomainError("rearrange: invalid resolution or Wulff volume");
    }
    const DirectionSet dirs = direction_set(n, res.rays);
    const std::size_t rays = dirs.size();
    const auto shells = static_cast<std::size_t>(res.shells);
    std::vector<double> radius(rays);
    parallel_for(rays, [&](std::size_t i) { radius[i] = ray_root(u, dirs.directions[i], 0.0); });

    // equal-volume shells in sigma = (s / s_b)^n, offset per ray so samples interleave
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    std::vector<double> values(rays * shells);
    std::vector<double> weights(rays * shells);
    parallel_for(rays, [&](std::size_t i) {
        const double offset = std::fmod(golden * static_cast<double>(i) + 0.5, 1.0);
        const double sb = radius[i];
        const double w = dirs.weights[i] * std::pow(sb, n) / (n * static_cast<double>(shells));
        for (std::size_t j = 0; j < shells; ++j) {
            const double sigma = (static_cast<double>(j) + offset) / static_cast<double>(shells);
            const Vector x = u.anchor() + sb * std::pow(sigma, 1.0 / n) * dirs.directions[i];
            values[i * shells + j] = f(x);
            weights[i * shells + j] = w;
        }
    });
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw InputError("rearrange: f must be finite and nonnegative (got " +
                             std::to_string(values[i]) + ")");
        }
    }
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    // cell centers in cumulative volume
    std::vector<double> centers(order.size());
    std::vector<double> sorted(order.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < order.size(); ++j) {
        const double w = weights[order[j]];
        centers[j] = acc + 0.5 * w;
        acc += w;
        sorted[j] = values[order[j]];
    }
    const double volume = acc;
    const double zeta0 = std::pow(volume / kappa_n, 1.0 / n);
    const auto count = static_cast<std::size_t>(res.nodes);
    std::vector<double> r(count), y(count);
    for (std::size_t i = 0; i < count; ++i) {
        r[i] = zeta0 * static_cast<double>(i) / static_cast<double>(count - 1);
        const double target = kappa_n * std::pow(r[i], n);
        const auto it = std::lower_bound(centers.begin(), centers.end(), target);
        if (it == centers.begin()) {
            y[i] = sorted.front();
        } else if (it == centers.end()) {
            y[i] = sorted.back();
        } else {
            const auto j = static_cast<std::size_t>(it - centers.begin());
            const double lam = (target - centers[j - 1]) / (centers[j] - centers[j - 1]);
            y[i] = sorted[j - 1] + lam * (sorted[j] - sorted[j - 1]);
        }
    }
    r.back() = zeta0;
    return MonotoneProfile(std::move(r), std::move(y), Monotonicity::decreasing);
}

}  // namespace wulffsym
