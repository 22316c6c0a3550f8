#include "wulffsym/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "wulffsym/bodies.hpp"
#include "wulffsym/error.hpp"
#include "wulffsym/types.hpp"

namespace wulffsym {
namespace {

constexpr double kZetaSlack = 1e-8;

std::string point_string(const Vector& x)
{
    std::string s = "(";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        s += (i ? ", " : "") + std::to_string(x[i]);
    }
    return s + ")";
}

}  // namespace

SymmetrizeOptions default_symmetrize_options(int n)
{
    SymmetrizeOptions opt;
    opt.rays = n == 2 ? RayResolution{1024, 0} : RayResolution{64, 32};
    opt.volume = default_volume_resolution(n);
    opt.coarea = default_level_grid(n);
    opt.rearrangement = default_rearrangement_resolution(n);
    return opt;
}

double sobolev_constant(int n, int k, double p, double kappa_n)
{
    if (n < 1 || k < 1 || k > n) {
        throw DomainError("sobolev_constant: need 1 <= k <= n");
    }
    if (!(p >= 1.0)) {
        throw DomainError("sobolev_constant: p must be >= 1");
    }
    const double gap = n - k + 1 - p;
    if (!(gap > 0.0)) {
        throw DomainError("sobolev_constant: p >= n-k+1 is the borderline/Morrey range, not supported");
    }
    if (!(kappa_n > 0.0)) {
        throw DomainError("sobolev_constant: Wulff volume must be positive");
    }
    const double a = k - 1 + p;
    const double lead = p == 1.0 ? 1.0 : std::pow((p - 1.0) / gap, p - 1.0);
    // log-Gamma keeps the bracket finite for larger n
    const double log_bracket = std::lgamma(n * p / a) - std::lgamma(n / a) -
                               std::lgamma(1.0 + n * (p - 1.0) / a) - std::log(kappa_n);
    return lead / (k * binomial(n, k)) * std::exp(log_bracket * a / n);
}

Symmetrizer::Symmetrizer(Norm f, Field u, SymmetrizeOptions options)
    : f_(std::move(f)), u_(std::move(u)), opt_(std::move(options))
{
    if (f_.dimension() != u_.dimension()) {
        throw DomainError("Symmetrizer: norm and field dimensions differ");
    }
    if (opt_.levels < 4 || !(opt_.bottom_offset > 0.0 && opt_.bottom_offset < 1.0) ||
        opt_.cap_nodes < 2) {
        throw DomainError("Symmetrizer: invalid options");
    }
}

void Symmetrizer::check_order(int k) const
{
    if (k < 1 || k > dimension()) {
        throw DomainError("Symmetrizer: order k=" + std::to_string(k) + " outside [1, n]");
    }
}

double Symmetrizer::kappa()
{
    return f_.wulff_volume();
}

const VolumeGrid& Symmetrizer::volume_grid()
{
    if (!grid_) {
        grid_ = build_volume_grid(u_, opt_.volume);
    }
    return *grid_;
}

const std::vector<LevelRecord>& Symmetrizer::sweep()
{
    if (sweep_) {
        return *sweep_;
    }
    const int n = dimension();
    const double m = u_.min_value();
    const double bottom = m + opt_.bottom_offset * std::abs(m);
    std::vector<LevelRecord> records;
    skipped_ = 0;
    for (int i = 0; i < opt_.levels; ++i) {
        const double t = i + 1 == opt_.levels
                             ? 0.0
                             : bottom + (0.0 - bottom) * static_cast<double>(i) / (opt_.levels - 1);
        LevelSetSample sample;
        try {
            sample = sample_level_set(f_, u_, t, opt_.rays);
        } catch (const DegenerateLevelError&) {
            ++skipped_;
            continue;
        }
        LevelRecord rec;
        rec.level = t;
        for (int j = 0; j < n; ++j) {
            rec.zeta.push_back(mean_radius(sample, j));
            rec.zeta_rate.push_back(mean_radius_rate(sample, j));
        }
        for (int k = 1; k <= n; ++k) {
            const auto& curv = sample.curvatures[static_cast<std::size_t>(k - 1)];
            std::vector<double> terms(sample.size());
            for (std::size_t q = 0; q < sample.size(); ++q) {
                terms[q] = sample.weights[q] * curv[q] * std::pow(sample.gradient_norms[q], k) *
                           sample.f_of_nu[q];
            }
            rec.energy.push_back(stable_sum(terms) / k);
        }
        rec.af_min_margin = std::numeric_limits<double>::infinity();
        for (const AfMargin& a : af_margins(sample)) {
            rec.af_min_margin = std::min(rec.af_min_margin, a.margin);
        }
        if (n == 1) {
            rec.af_min_margin = 0.0;
        }
        records.push_back(std::move(rec));
    }
    if (records.size() < 4 || records.back().level != 0.0) {
        throw NumericError("Symmetrizer: too few non-degenerate levels (top level must be usable)");
    }
    sweep_ = std::move(records);
    return *sweep_;
}

int Symmetrizer::levels_skipped()
{
    sweep();
    return skipped_;
}

MonotoneProfile Symmetrizer::zeta_profile(int k)
{
    check_order(k);
    const auto& recs = sweep();
    const auto j = static_cast<std::size_t>(k - 1);
    std::vector<double> t, z, dz;
    for (const LevelRecord& rec : recs) {
        t.push_back(rec.level);
        z.push_back(rec.zeta[j]);
        dz.push_back(rec.zeta_rate[j]);
    }
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        if (z[i + 1] < z[i] - kZetaSlack * std::max(1.0, z.back())) {
            throw ModelError("zeta_profile: mean radius decreases between t=" + std::to_string(t[i]) +
                             " and t=" + std::to_string(t[i + 1]) +
                             " (field not quasi-convex or resolution too low)");
        }
    }
    return MonotoneProfile(std::move(t), std::move(z), std::move(dz), Monotonicity::increasing,
                           kZetaSlack);
}

const SymmetrizationResult& Symmetrizer::symmetrand(int k)
{
    check_order(k);
    if (auto it = results_.find(k); it != results_.end()) {
        return it->second;
    }
    SymmetrizationResult res;
    res.order = k;
    res.dimension = dimension();
    res.kappa_n = kappa();
    res.min_value = u_.min_value();
    res.zeta_profile = zeta_profile(k);
    res.levels_skipped = skipped_;

    const auto& t = res.zeta_profile.abscissae();
    const auto& z = res.zeta_profile.values();
    const auto& dz = res.zeta_profile.derivatives();
    const double m = res.min_value;
    res.outer_radius = z.back();

    // bottom cap m + alpha r^beta matched in value and slope at the lowest level
    const double r0 = z.front();
    const double drop = t.front() - m;
    if (!(r0 > 0.0) || !(drop > 0.0) || !(dz.front() > 0.0)) {
        throw NumericError("symmetrand: degenerate lowest level");
    }
    const double beta = std::max(1.0, r0 / (dz.front() * drop));
    const double alpha = drop / std::pow(r0, beta);
    res.cap_radius = r0;
    res.cap_exponent = beta;

    std::vector<double> r, v, d;
    for (int i = 0; i < opt_.cap_nodes; ++i) {
        const double x = r0 * static_cast<double>(i) / opt_.cap_nodes;
        r.push_back(x);
        v.push_back(m + alpha * std::pow(x, beta));
        d.push_back(x > 0.0 ? alpha * beta * std::pow(x, beta - 1.0) : (beta == 1.0 ? alpha : 0.0));
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] > r.back())) {
            continue;  // flat stretch of zeta: sup-inversion keeps the largest t
        }
        r.push_back(z[i]);
        v.push_back(t[i]);
        d.push_back(1.0 / dz[i]);
    }
    if (r.back() != res.outer_radius) {
        // the top level got merged into a flat stretch; pin rho(R) = 0
        r.back() = res.outer_radius;
        v.back() = 0.0;
    }
    res.rho = MonotoneProfile(std::move(r), std::move(v), std::move(d), Monotonicity::increasing);
    return results_.emplace(k, std::move(res)).first->second;
}

MarginReport Symmetrizer::ps_margin(int k)
{
    const SymmetrizationResult& sym = symmetrand(k);
    MarginReport out;
    out.lhs = hessian_integral(f_, u_, k, volume_grid());
    out.cross_check = hessian_integral_coarea(f_, u_, k, opt_.coarea).value;
    out.rhs = radial_hessian_integral(sym.rho, sym.outer_radius, dimension(), k, sym.kappa_n);
    out.margin = out.lhs - out.rhs;
    return out;
}

MarginReport Symmetrizer::ps_margin_p(int k, double p)
{
    const SymmetrizationResult& sym = symmetrand(k);
    MarginReport out;
    out.lhs = generalized_integral(f_, u_, k, p, volume_grid());
    out.rhs = radial_generalized_integral(sym.rho, sym.outer_radius, dimension(), k, p, sym.kappa_n);
    out.margin = out.lhs - out.rhs;
    return out;
}

LpComparison Symmetrizer::lp_compare(int k, double p)
{
    const SymmetrizationResult& sym = symmetrand(k);
    LpComparison out;
    out.p = p;
    if (std::isinf(p) && p > 0.0) {
        out.lhs = std::abs(u_.min_value());
        out.rhs = std::abs(sym.rho.value(0.0));
        return out;
    }
    if (!(p >= 1.0)) {
        throw DomainError("lp_compare: p must be >= 1");
    }
    out.lhs = volume_grid().integrate([&](const Vector& x) { return std::pow(std::abs(u_.value(x)), p); });
    out.rhs = radial_power_integral(sym.rho, sym.outer_radius, dimension(), p, sym.kappa_n);
    return out;
}

MarginReport Symmetrizer::sobolev_margin(int k, double p)
{
    check_order(k);
    const int n = dimension();
    const double c = sobolev_constant(n, k, p, kappa());
    const double q = n * p / (n - k + 1 - p);
    const double norm_q = volume_grid().integrate([&](const Vector& x) {
        return std::pow(std::abs(u_.value(x)), q);
    });
    MarginReport out;
    out.lhs = std::pow(norm_q, p / q);
    out.rhs = c * generalized_integral(f_, u_, k, p, volume_grid());
    out.margin = out.rhs - out.lhs;
    return out;
}

ComparisonResult Symmetrizer::comparison_margin(const std::function<double(const Vector&)>& source,
                                                int k)
{
    check_order(k);
    const VolumeGrid& grid = volume_grid();
    ComparisonResult out;
    out.max_precondition_excess = -std::numeric_limits<double>::infinity();
    Vector worst;
    for (const Vector& x : grid.points) {
        const double f = source(x);
        const double lhs = sk_field(f_, u_, x, k);
        const double excess = lhs - f;
        if (excess > out.max_precondition_excess) {
            out.max_precondition_excess = excess;
            worst = x;
        }
        if (excess > 1e-9 * (1.0 + std::abs(f))) {
            throw InputError("comparison_margin: S_k[u] exceeds f at " + point_string(x) +
                             " (S_k=" + std::to_string(lhs) + ", f=" + std::to_string(f) + ")");
        }
    }
    const SymmetrizationResult& sym = symmetrand(k);
    out.outer_radius = sym.outer_radius;
    out.rearranged = rearrange(source, u_, sym.kappa_n, opt_.rearrangement);
    out.solution = solve_radial(out.rearranged, sym.outer_radius, dimension(), k, opt_.radial_nodes);
    out.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.solution.radii.size(); ++i) {
        const double r = out.solution.radii[i];
        const double gap = sym.rho.value(r) - out.solution.values[i];
        out.radii.push_back(r);
        out.margin.push_back(gap);
        if (gap < out.min_margin) {
            out.min_margin = gap;
            out.argmin = r;
        }
    }
    return out;
}

ChainReport Symmetrizer::chain_inequality(int k)
{
    check_order(k);
    const int n = dimension();
    const double kap = kappa();
    const auto j = static_cast<std::size_t>(k - 1);
    ChainReport out;
    out.min_relative_margin = std::numeric_limits<double>::infinity();
    for (const LevelRecord& rec : sweep()) {
        const double lhs = rec.energy[j];
        const double rhs = kap * binomial(n, k) * std::pow(rec.zeta[j], n - k) /
                           std::pow(rec.zeta_rate[j], k);
        out.levels.push_back(rec.level);
        out.lhs.push_back(lhs);
        out.rhs.push_back(rhs);
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        out.min_relative_margin =
            std::min(out.min_relative_margin, scale > 0.0 ? (lhs - rhs) / scale : 0.0);
    }
    return out;
}

MonotoneProfile zeta_profile(const Norm& f, const Field& u, int k, int level_count)
{
    SymmetrizeOptions opt = default_symmetrize_options(u.dimension());
    opt.levels = level_count;
    return Symmetrizer(f, u, opt).zeta_profile(k);
}

SymmetrizationResult symmetrand(const Norm& f, const Field& u, int k)
{
    Symmetrizer s(f, u, default_symmetrize_options(u.dimension()));
    return s.symmetrand(k);
}

MarginReport ps_margin(const Norm& f, const Field& u, int k)
{
    return Symmetrizer(f, u, default_symmetrize_options(u.dimension())).ps_margin(k);
}

MarginReport ps_margin_p(const Norm& f, const Field& u, int k, double p)
{
    return Symmetrizer(f, u, default_symmetrize_options(u.dimension())).ps_margin_p(k, p);
}

LpComparison lp_compare(const Norm& f, const Field& u, int k, double p)
{
    return Symmetrizer(f, u, default_symmetrize_options(u.dimension())).lp_compare(k, p);
}

MarginReport sobolev_margin(const Norm& f, const Field& u, int k, double p)
{
    return Symmetrizer(f, u, default_symmetrize_options(u.dimension())).sobolev_margin(k, p);
}

ComparisonResult comparison_margin(const Norm& f, const Field& u,
                                   const std::function<double(const Vector&)>& source, int k)
{
    return Symmetrizer(f, u, default_symmetrize_options(u.dimension())).comparison_margin(source, k);
}

}  // namespace wulffsym
