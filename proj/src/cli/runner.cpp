#include "wulffsym/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>

#include "wulffsym/bodies.hpp"
#include "wulffsym/corpus.hpp"
#include "wulffsym/error.hpp"
#include "wulffsym/field_ops.hpp"
#include "wulffsym/invariants.hpp"

namespace wulffsym::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// |value - reference| / scale against tol.
Row compare_row(std::string item, int k, double value, double reference, double scale, double tol)
{
    Row r;
    r.item = std::move(item);
    r.k = k;
    r.value = value;
    r.reference = reference;
    r.error = std::abs(value - reference) / scale;
    r.tolerance = tol;
    r.pass = std::isfinite(r.error) && r.error <= tol;
    return r;
}

Row relative_row(std::string item, int k, double value, double reference, double tol)
{
    const double scale = std::max(std::abs(reference), std::numeric_limits<double>::min());
    return compare_row(std::move(item), k, value, reference, scale, tol);
}

// A computed error statistic that must stay below tol.
Row error_row(std::string item, int k, double err, double tol, std::string note = {})
{
    Row r;
    r.item = std::move(item);
    r.k = k;
    r.value = err;
    r.error = err;
    r.tolerance = tol;
    r.pass = std::isfinite(err) && err <= tol;
    r.note = std::move(note);
    return r;
}

// lhs >= rhs - tol; value is the margin lhs - rhs.
Row margin_row(std::string item, int k, double p, double lhs, double rhs, double tol)
{
    Row r;
    r.item = std::move(item);
    r.k = k;
    r.p = p;
    r.lhs = lhs;
    r.rhs = rhs;
    r.value = lhs - rhs;
    r.tolerance = tol;
    r.pass = std::isfinite(r.value) && r.value >= -tol;
    return r;
}

Row failure_row(const std::string& what, int k = 0)
{
    Row r;
    r.item = "error";
    r.k = k;
    r.pass = false;
    r.note = what;
    return r;
}

// Runs body, converting library errors into a failing row.
void guarded(TaskReport& rep, int k, const std::function<void()>& body)
{
    try {
        body();
    } catch (const std::exception& e) {
        rep.rows.push_back(failure_row(e.what(), k));
    }
}

SquareMatrix random_matrix(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    SquareMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = unit(rng);
        }
    }
    return a;
}

SquareMatrix random_spd(std::mt19937_64& rng, int n)
{
    const SquareMatrix g = random_matrix(rng, n);
    return g * g.transpose() + 0.5 * SquareMatrix::Identity(n, n);
}

// dS_k/dA_ij by the exact affine dependence of S_k on each entry.
SquareMatrix derivative_oracle(const SquareMatrix& a, int k)
{
    const int n = static_cast<int>(a.rows());
    const double base = sk_minors(a, k);
    SquareMatrix d(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            SquareMatrix b = a;
            b(i, j) += 1.0;
            d(i, j) = sk_minors(b, k) - base;
        }
    }
    return d;
}

// Worst error per dimension for one property.
struct Tally {
    std::vector<double> worst = std::vector<double>(7, 0.0);
    std::vector<int> count = std::vector<int>(7, 0);
    void add(int n, double err)
    {
        worst[static_cast<std::size_t>(n)] = std::max(worst[static_cast<std::size_t>(n)], err);
        ++count[static_cast<std::size_t>(n)];
    }
};

std::vector<Vector> pick(const std::vector<Vector>& pts, std::size_t count)
{
    std::vector<Vector> out;
    if (pts.empty()) {
        return out;
    }
    const std::size_t stride = std::max<std::size_t>(1, pts.size() / count);
    for (std::size_t i = 0; i < pts.size() && out.size() < count; i += stride) {
        out.push_back(pts[i]);
    }
    return out;
}

// Quadratic plus a small diagonal cubic: u = x^T Q x / 2 + sum c_i x_i^3 / 6 - 1/2.
Field cubic_perturbed(const SquareMatrix& q, const Vector& c)
{
    const int n = static_cast<int>(q.rows());
    auto jet = [q, c](const Vector& x) {
        FieldJet j;
        j.value = 0.5 * x.dot(q * x) + x.array().cube().matrix().dot(c) / 6.0 - 0.5;
        j.gradient = q * x + 0.5 * (c.array() * x.array().square()).matrix();
        j.hessian = q;
        j.hessian.diagonal() += (c.array() * x.array()).matrix();
        return j;
    };
    auto first = [jet](const Vector& x) {
        const FieldJet j = jet(x);
        return FieldFirstOrder{j.value, j.gradient};
    };
    return Field("cubic_perturbed", n, jet, first, Vector::Zero(n), -0.5);
}

// max_i |sum_j d_j T_ij| by central differences with step h, and the
// magnitude of the individual terms for scaling.
std::pair<double, double> divergence_residual(const Norm& f, const Field& u, const Vector& x, int k,
                                              double h)
{
    const int n = u.dimension();
    Vector div = Vector::Zero(n);
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
        Vector xp = x;
        Vector xm = x;
        xp(j) += h;
        xm(j) -= h;
        const SquareMatrix d = (newton_field(f, u.jet(xp), k) - newton_field(f, u.jet(xm), k)) / (2.0 * h);
        div += d.col(j);
        scale = std::max(scale, d.col(j).cwiseAbs().maxCoeff());
    }
    return {div.cwiseAbs().maxCoeff(), scale};
}

// Relative discrepancy of the two sides of the decomposition
// S_k[u] = S_k(kappa_F) F^k + (1/F) grad F^T T_k A^T grad u.
double decomposition_error(const Norm& f, const FieldJet& jet, int k)
{
    const NormJet fj = f.eval_jet(jet.gradient);
    const SquareMatrix a = aniso_hessian(f, jet);
    const SquareMatrix t = newton_field(f, jet, k);
    const double lhs = sk(a, k);
    const double level = sk(curvature_matrix(f, jet), k) * std::pow(fj.value, k);
    const double rest = fj.gradient.dot(t * (a.transpose() * jet.gradient)) / fj.value;
    const double scale = std::max({std::abs(lhs), std::abs(level), std::abs(rest), 1e-300});
    return std::abs(lhs - level - rest) / scale;
}

// S_k(B) against (1/F) sum S_{k+1}^{ij}[u] u_j F_i.
double split_error(const Norm& f, const FieldJet& jet, int k)
{
    const NormJet fj = f.eval_jet(jet.gradient);
    const AnisoHessianSplit sp = aniso_hessian_split(f, jet);
    const double lhs = sk(sp.b, k);
    const double rhs = fj.gradient.dot(newton_field(f, jet, k + 1) * jet.gradient) / fj.value;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

std::string order_tag(int k) { return "k" + std::to_string(k); }

}  // namespace

Subject subject_from_config(const ExperimentConfig& config)
{
    Norm norm = build_norm(config.norm);
    Field field = build_field(config.field, norm);
    const SymmetrizeOptions opt = build_options(config);
    Subject s{config.field.preset + "/" + to_string(config.norm.family), norm, field, opt,
              config.field.preset, false, 0.0, 2.0, opt.rays, opt.volume};
    if (config.field.preset == "radial_power") {
        s.radial = true;
        s.radius = config.field.params.contains("R") ? config.field.params["R"].get<double>() : 1.0;
        s.exponent = config.field.params.contains("a") ? config.field.params["a"].get<double>() : 2.0;
    }
    return s;
}

TaskReport task_invariants(std::uint64_t seed, int samples)
{
    TaskReport rep;
    rep.task = "invariants";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    Tally oracle, recursion, newton_oracle, newton_derivative, identity, trace, homogeneity,
        binomial_exp, eigen;
    for (int s = 0; s < samples; ++s) {
        const int n = dim(rng);
        const SquareMatrix a = random_matrix(rng, n);
        std::vector<SquareMatrix> d(static_cast<std::size_t>(n + 1));
        std::vector<double> sv(static_cast<std::size_t>(n + 1));
        sv[0] = 1.0;
        for (int k = 1; k <= n; ++k) {
            sv[static_cast<std::size_t>(k)] = sk(a, k);
            d[static_cast<std::size_t>(k)] = derivative_oracle(a, k);
        }
        for (int k = 1; k <= n; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            const double fast = sv[ku];
            const SquareMatrix t = newton_transform(a, k);
            if (k <= 4) {
                const double slow = sk_delta_oracle(a, k);
                oracle.add(n, std::abs(fast - slow) / (1.0 + std::abs(slow)));
                const SquareMatrix to = newton_transform_delta_oracle(a, k);
                newton_oracle.add(n, (t - to).cwiseAbs().maxCoeff() / (1.0 + to.cwiseAbs().maxCoeff()));
            }
            recursion.add(n, std::abs(sk_recursive(a, k) - sk_minors(a, k)) / (1.0 + std::abs(fast)));
            newton_derivative.add(n, (t - d[ku]).cwiseAbs().maxCoeff());
            if (k >= 2) {
                const SquareMatrix res = d[ku] - sv[ku - 1] * SquareMatrix::Identity(n, n) +
                                         d[ku - 1] * a.transpose();
                identity.add(n, res.cwiseAbs().maxCoeff());
            }
            trace.add(n, std::abs(t.cwiseProduct(a).sum() - k * fast));
            const double c = scale(rng);
            const double scaled = sk(c * a, k);
            homogeneity.add(n, std::abs(scaled - std::pow(c, k) * fast) / (1.0 + std::abs(scaled)));
        }
        if (n <= 4) {
            const SquareMatrix b = random_matrix(rng, n);
            for (int k = 1; k <= n; ++k) {
                double sum = 0.0;
                for (int r = 0; r <= k; ++r) {
                    std::vector<SquareMatrix> args(static_cast<std::size_t>(k - r), a);
                    args.insert(args.end(), static_cast<std::size_t>(r), b);
                    sum += binomial(k, r) * mixed_discriminant(args);
                }
                const double direct = sk(a + b, k);
                binomial_exp.add(n, std::abs(direct - sum) / (1.0 + std::abs(direct)));
            }
        }
        // P Q with P, Q SPD is similar to a symmetric matrix: real spectrum.
        const SquareMatrix pq = random_spd(rng, n) * random_spd(rng, n);
        const Eigen::VectorXd lambda = Eigen::EigenSolver<SquareMatrix>(pq, false).eigenvalues().real();
        const std::vector<double> lam(lambda.data(), lambda.data() + n);
        for (int k = 1; k <= n; ++k) {
            const double ref = sigma_k(lam, k);
            eigen.add(n, std::abs(sk(pq, k) - ref) / (1.0 + std::abs(ref)));
        }
    }
    const auto emit = [&](const std::string& item, const Tally& t, double tol, const std::string& note) {
        for (int n = 1; n <= 6; ++n) {
            const auto nu = static_cast<std::size_t>(n);
            if (t.count[nu] == 0) {
                continue;
            }
            Row r = error_row(item + "_n" + std::to_string(n), 0, t.worst[nu], tol,
                              note + "; " + std::to_string(t.count[nu]) + " cases");
            rep.rows.push_back(std::move(r));
        }
    };
    emit("sk_vs_delta_oracle", oracle, 1e-12, "relative to 1+|S_k|, k<=4");
    emit("minors_vs_recursion", recursion, 1e-12, "relative to 1+|S_k|");
    emit("newton_vs_delta_oracle", newton_oracle, 1e-12, "max entry, relative, k<=4");
    emit("newton_vs_entry_derivative", newton_derivative, 1e-10, "max entry, absolute");
    emit("newton_identity", identity, 1e-10, "max entry, absolute, k>=2");
    emit("trace_identity", trace, 1e-10, "sum S_k^ij A_ij - k S_k, absolute");
    emit("homogeneity", homogeneity, 1e-12, "S_k(cA) = c^k S_k(A)");
    emit("binomial_expansion", binomial_exp, 1e-10, "mixed discriminants, n<=4");
    emit("eigenvalue_oracle", eigen, 1e-10, "S_k(PQ) vs sigma_k of its spectrum");
    return rep;
}

TaskReport task_identities(const Subject& s, const std::vector<int>& orders, std::uint64_t seed)
{
    TaskReport rep;
    rep.task = "identities";
    const Norm& f = s.norm;
    const Field& u = s.field;
    const int n = u.dimension();
    const double m = u.min_value();

    guarded(rep, 0, [&] {
        std::vector<Vector> pts;
        for (double frac : {0.75, 0.5, 0.25}) {
            const LevelSetSample smp = sample_level_set(f, u, frac * m, s.probe_rays);
            const std::vector<Vector> some = pick(smp.points, 34);
            pts.insert(pts.end(), some.begin(), some.end());
        }
        pts.resize(std::min<std::size_t>(pts.size(), 100));
        std::vector<FieldJet> jets;
        for (const Vector& x : pts) {
            jets.push_back(u.jet(x));
        }
        const std::string note = std::to_string(pts.size()) + " points on three level sets";
        for (int k = 0; k < n; ++k) {
            double worst = 0.0;
            double worst_split = 0.0;
            for (const FieldJet& j : jets) {
                worst = std::max(worst, level_curvature(f, j, k).discrepancy);
                worst_split = std::max(worst_split, split_error(f, j, k));
            }
            rep.rows.push_back(error_row("curvature_two_forms", k, worst, 1e-8, note));
            rep.rows.push_back(error_row("split_identity", k, worst_split, 1e-9, note));
        }
        for (int k = 1; k <= n; ++k) {
            double worst = 0.0;
            for (const FieldJet& j : jets) {
                worst = std::max(worst, decomposition_error(f, j, k));
            }
            rep.rows.push_back(error_row("curvature_decomposition", k, worst, 1e-9, note));
        }
    });

    // Divergence of the Newton tensor: on the subject and on a seeded cubic-perturbed quadratic.
    guarded(rep, 0, [&] {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        SquareMatrix q = random_spd(rng, n);
        q /= q.norm();
        q += SquareMatrix::Identity(n, n);
        Vector c(n);
        for (int i = 0; i < n; ++i) {
            c(i) = 0.3 * unit(rng);
        }
        const Field cubic = cubic_perturbed(q, c);
        const std::vector<std::pair<std::string, const Field*>> fields = {{"divergence_free", &u},
                                                                          {"divergence_free_cubic", &cubic}};
        for (const auto& [item, field] : fields) {
            std::vector<Vector> pts;
            const Vector x0 = field->anchor();
            const LevelSetSample smp = sample_level_set(f, *field, 0.5 * field->min_value(), s.probe_rays);
            for (const Vector& x : pick(smp.points, 8)) {
                pts.push_back(x0 + 0.8 * (x - x0));
            }
            for (int k = 1; k <= n; ++k) {
                const double h = 1e-3;
                double worst_fine = 0.0;
                double worst_order = std::numeric_limits<double>::infinity();
                bool all_small = true;
                for (const Vector& x : pts) {
                    const auto [r1, s1] = divergence_residual(f, *field, x, k, h);
                    const auto [r2, s2] = divergence_residual(f, *field, x, k, 0.5 * h);
                    const double scale = std::max({s1, s2, 1.0});
                    worst_fine = std::max(worst_fine, r2 / scale);
                    if (r2 > 1e-9 * scale) {
                        all_small = false;
                        worst_order = std::min(worst_order, std::log2(r1 / r2));
                    }
                }
                Row r = error_row(item, k, worst_fine, 1e-9);
                r.reference = 0.0;
                if (!all_small) {
                    // Truncation dominated: require second-order decay in h instead.
                    r.pass = worst_order >= 1.8;
                    r.note = "observed order " + format_number(worst_order) + " (>= 1.8 required)";
                } else {
                    r.note = "residual below roundoff floor at h/2";
                }
                rep.rows.push_back(std::move(r));
            }
        }
    });

    for (int k : orders) {
        guarded(rep, k, [&] {
            const VolumeGrid grid = build_volume_grid(u, s.probe_volume);
            const double direct = hessian_integral(f, u, k, grid);
            const CoareaResult co = hessian_integral_coarea(f, u, k, s.options.coarea);
            rep.rows.push_back(relative_row("coarea_vs_direct", k, co.value, direct, 1e-3));
            const double gen = generalized_integral(f, u, k, k + 1.0, grid);
            Row r = relative_row("generalized_p_k_plus_1", k, gen, k * direct, 1e-4);
            r.p = k + 1.0;
            r.note = "I_{k,k+1} = k I_k";
            rep.rows.push_back(std::move(r));
            if (k == 1) {
                for (double p : {1.0, 2.0, 3.0}) {
                    const double lhs = generalized_integral(f, u, 1, p, grid);
                    const double rhs = grid.integrate([&](const Vector& x) {
                        return std::pow(f.value(u.first_order(x).gradient), p);
                    });
                    Row g = relative_row("generalized_k1", 1, lhs, rhs, 1e-10);
                    g.p = p;
                    g.note = "I_{1,p} = int F(grad u)^p";
                    rep.rows.push_back(std::move(g));
                }
            }
        });
    }
    return rep;
}

TaskReport task_mixedvol(const Subject& s, const std::vector<double>& radii)
{
    TaskReport rep;
    rep.task = "mixedvol";
    const Norm& f = s.norm;
    const Field& u = s.field;
    const int n = u.dimension();
    const double m = u.min_value();

    for (double r : radii) {
        guarded(rep, 0, [&] {
            const Field ball = radial_power(f, 2.0, r);
            const LevelSetSample smp = sample_level_set(f, ball, 0.0, s.probe_rays);
            for (int k = 0; k < n; ++k) {
                Row row = relative_row("wulff_ball_W", k, mixed_volume(smp, k),
                                       smp.kappa_n * std::pow(r, n - k), 1e-4);
                row.note = "radius " + format_number(r);
                rep.rows.push_back(std::move(row));
            }
        });
    }

    guarded(rep, 0, [&] {
        const LevelSetSample outer = sample_level_set(f, u, 0.0, s.probe_rays);
        const LevelSetSample inner = sample_level_set(f, u, 0.5 * m, s.probe_rays);
        DataFile table{"levels", {"k", "W", "zeta"}, {}};
        for (int k = 0; k < n; ++k) {
            const double w = mixed_volume(outer, k);
            const double z = mean_radius(outer, k);
            table.rows.push_back({static_cast<double>(k), w, z});
            Row mono = margin_row("monotone_in_inclusion", k, kNone, w, mixed_volume(inner, k), 0.0);
            mono.pass = mono.value > 0.0;
            mono.note = "W_k(Omega) - W_k(Omega_{m/2}) > 0";
            rep.rows.push_back(std::move(mono));
        }
        rep.files.push_back(std::move(table));

        if (s.preset == "quadratic_ellipsoid") {
            const SquareMatrix q = u.jet(u.anchor()).hessian;
            const double vol = unit_ball_volume(n) / std::sqrt(q.determinant());
            rep.rows.push_back(relative_row("volume_closed_form", 0, mixed_volume(outer, 0), vol, 1e-6));
        }
        if (s.radial) {
            for (int k = 0; k < n; ++k) {
                rep.rows.push_back(relative_row("wulff_ball_W_closed_form", k, mixed_volume(outer, k),
                                                outer.kappa_n * std::pow(s.radius, n - k), 1e-4));
            }
        }

        // Reilly rate against central differences of the sampled levels.
        const double t = 0.5 * m;
        const double dt = 1e-3 * std::abs(m);
        const LevelSetSample up = sample_level_set(f, u, t + dt, s.probe_rays);
        const LevelSetSample down = sample_level_set(f, u, t - dt, s.probe_rays);
        for (int k = 0; k < n; ++k) {
            const double fd = (mixed_volume(up, k) - mixed_volume(down, k)) / (2.0 * dt);
            const std::string note = "t = m/2, central difference 1e-3|m|";
            Row w = relative_row("reilly_rate_W", k, mixed_volume_rate(inner, k), fd, 1e-3);
            w.note = note;
            rep.rows.push_back(std::move(w));
            const double fz = (mean_radius(up, k) - mean_radius(down, k)) / (2.0 * dt);
            Row z = relative_row("reilly_rate_zeta", k, mean_radius_rate(inner, k), fz, 1e-3);
            z.note = note;
            rep.rows.push_back(std::move(z));
        }
    });
    return rep;
}

TaskReport task_af(const Subject& s)
{
    TaskReport rep;
    rep.task = "af";
    const int n = s.field.dimension();
    const double m = s.field.min_value();
    DataFile table{"margins", {"t", "lower", "higher", "margin"}, {}};
    for (double frac : {0.75, 0.5, 0.25, 0.0}) {
        guarded(rep, 0, [&] {
            const double t = frac * m;
            const LevelSetSample smp = sample_level_set(s.norm, s.field, t, s.probe_rays);
            double lowest = std::numeric_limits<double>::infinity();
            double largest = 0.0;
            for (const AfMargin& a : af_margins(smp)) {
                lowest = std::min(lowest, a.margin);
                largest = std::max(largest, std::abs(a.margin));
                table.rows.push_back({t, static_cast<double>(a.lower), static_cast<double>(a.higher), a.margin});
            }
            if (n < 2) {
                return;
            }
            Row r = margin_row("af_min_margin", 0, kNone, lowest, 0.0, 1e-6);
            r.note = "t = " + format_number(t);
            rep.rows.push_back(r);
            if (s.radial) {
                Row e = error_row("af_equality_wulff", 0, largest, 1e-6, r.note);
                e.reference = 0.0;
                rep.rows.push_back(std::move(e));
            }
        });
    }
    rep.files.push_back(std::move(table));
    return rep;
}

TaskReport task_symmetrize(Symmetrizer& sym, const Subject& s, const std::vector<int>& orders,
                           const std::vector<double>& exponents)
{
    TaskReport rep;
    rep.task = "symmetrize";
    for (int k : orders) {
        guarded(rep, k, [&] {
            const SymmetrizationResult& res = sym.symmetrand(k);
            const MonotoneProfile& z = res.zeta_profile;
            const MonotoneProfile& rho = res.rho;

            Row radius = error_row("outer_radius", k, 0.0, 0.0);
            radius.value = res.outer_radius;
            radius.error = kNone;
            radius.pass = res.outer_radius > 0.0 && std::isfinite(res.outer_radius);
            radius.note = std::to_string(res.levels_skipped) + " degenerate levels skipped";
            rep.rows.push_back(std::move(radius));

            rep.rows.push_back(compare_row("rho_at_outer_radius", k, rho.value(res.outer_radius), 0.0,
                                           1.0, 1e-10));
            rep.rows.push_back(compare_row("rho_at_origin", k, rho.value(0.0), res.min_value, 1.0, 1e-10));

            double inversion = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                inversion = std::max(inversion, std::abs(rho.value(z.values()[i]) - z.abscissae()[i]));
            }
            rep.rows.push_back(error_row("inversion", k, inversion, 1e-6, "max |rho(zeta(t)) - t| over levels"));

            // Midpoints, not nodes: at nodes the product is 1 by construction. The
            // first interval touches the square-root singularity of zeta at the
            // minimum and is reported in the note only.
            double consistency = 0.0;
            double bottom = 0.0;
            for (std::size_t i = 0; i + 1 < z.size(); ++i) {
                const double t = 0.5 * (z.abscissae()[i] + z.abscissae()[i + 1]);
                const double e = std::abs(z.derivative(t) * rho.derivative(z.value(t)) - 1.0);
                (i == 0 ? bottom : consistency) = std::max(i == 0 ? bottom : consistency, e);
            }
            rep.rows.push_back(error_row("consistency", k, consistency, 1e-3,
                                         "max |zeta'(t) rho'(zeta(t)) - 1| at level midpoints; bottom interval " +
                                             format_number(bottom)));

            if (s.radial) {
                const VolumeGrid& grid = sym.volume_grid();
                double worst = 0.0;
                const std::size_t stride = std::max<std::size_t>(1, grid.size() / 2000);
                for (std::size_t i = 0; i < grid.size(); i += stride) {
                    const Vector& x = grid.points[i];
                    const double r = s.norm.dual_value(x - s.field.anchor());
                    if (r > res.cap_radius) {
                        worst = std::max(worst, std::abs(rho.value(std::min(r, res.outer_radius)) - s.field.value(x)));
                    }
                }
                rep.rows.push_back(error_row("fixed_point", k, worst, 1e-6,
                                             "max |rho(F^o(x)) - u(x)| outside the bottom cap"));
            }

            const ChainReport chain = sym.chain_inequality(k);
            Row c = margin_row("chain_inequality", k, kNone, chain.min_relative_margin, 0.0, 1e-3);
            c.note = "min relative margin over levels";
            rep.rows.push_back(c);
            if (s.radial) {
                double worst = 0.0;
                for (std::size_t i = 0; i < chain.levels.size(); ++i) {
                    worst = std::max(worst, std::abs(chain.lhs[i] - chain.rhs[i]) /
                                                std::max(std::abs(chain.lhs[i]), 1e-300));
                }
                rep.rows.push_back(error_row("chain_equality", k, worst, 1e-4));
            }

            std::vector<double> ps = exponents;
            ps.push_back(std::numeric_limits<double>::infinity());
            for (double p : ps) {
                const LpComparison lp = sym.lp_compare(k, p);
                if (std::isinf(p)) {
                    Row r = compare_row("lp_sup_equality", k, lp.rhs, lp.lhs, 1.0, 0.0);
                    r.p = p;
                    r.lhs = lp.lhs;
                    r.rhs = lp.rhs;
                    rep.rows.push_back(std::move(r));
                    continue;
                }
                Row r = margin_row("lp_monotone", k, p, lp.rhs, lp.lhs, 1e-4 * std::max(1.0, lp.lhs));
                r.lhs = lp.lhs;
                r.rhs = lp.rhs;
                r.note = "int |u*|^p - int |u|^p";
                rep.rows.push_back(r);
                if (k == 1) {
                    Row e = relative_row("lp_equality_volume_preserving", k, lp.rhs, lp.lhs, 1e-4);
                    e.p = p;
                    rep.rows.push_back(std::move(e));
                }
            }

            DataFile zeta_file{"zeta_" + order_tag(k), {"t", "zeta", "dzeta_dt"}, {}};
            for (std::size_t i = 0; i < z.size(); ++i) {
                zeta_file.rows.push_back({z.abscissae()[i], z.values()[i], z.derivatives()[i]});
            }
            DataFile rho_file{"rho_" + order_tag(k), {"r", "rho", "drho_dr"}, {}};
            for (std::size_t i = 0; i < rho.size(); ++i) {
                rho_file.rows.push_back({rho.abscissae()[i], rho.values()[i], rho.derivatives()[i]});
            }
            rep.files.push_back(std::move(zeta_file));
            rep.files.push_back(std::move(rho_file));
        });
    }
    return rep;
}

TaskReport task_polya_szego(Symmetrizer& sym, const Subject& s, const std::vector<int>& orders,
                            const std::vector<double>& exponents)
{
    TaskReport rep;
    rep.task = "polya_szego";
    for (int k : orders) {
        guarded(rep, k, [&] {
            const MarginReport ps = sym.ps_margin(k);
            rep.rows.push_back(margin_row("hessian_integral", k, kNone, ps.lhs, ps.rhs,
                                          1e-4 * (1.0 + std::abs(ps.lhs))));
            Row co = relative_row("coarea_cross_check", k, ps.cross_check, ps.lhs, 1e-3);
            rep.rows.push_back(std::move(co));
            if (s.radial) {
                Row e = error_row("equality_radial", k, std::abs(ps.margin) / std::abs(ps.lhs), 1e-4,
                                  "|margin| / lhs");
                e.reference = 0.0;
                rep.rows.push_back(std::move(e));
            }
            for (double p : exponents) {
                const MarginReport pp = sym.ps_margin_p(k, p);
                rep.rows.push_back(margin_row("generalized_integral", k, p, pp.lhs, pp.rhs,
                                              1e-4 * (1.0 + std::abs(pp.lhs))));
                if (s.radial) {
                    Row e = error_row("equality_radial_p", k, std::abs(pp.margin) / std::abs(pp.lhs),
                                      1e-4, "|margin| / lhs");
                    e.p = p;
                    e.reference = 0.0;
                    rep.rows.push_back(std::move(e));
                }
                if (p == k + 1.0) {
                    Row r = relative_row("generalized_equals_k_times", k, pp.lhs, k * ps.lhs, 1e-4);
                    r.p = p;
                    rep.rows.push_back(std::move(r));
                }
            }
        });
    }
    return rep;
}

TaskReport task_compare(Symmetrizer& sym, const Subject& s, const std::vector<int>& orders,
                        const SourceSpec& source)
{
    TaskReport rep;
    rep.task = "compare";
    for (int k : orders) {
        guarded(rep, k, [&] {
            std::function<double(const Vector&)> f;
            std::string desc;
            if (source.kind == SourceSpec::Kind::constant) {
                const double c = source.value;
                f = [c](const Vector&) { return c; };
                desc = "f = " + format_number(c);
            } else {
                const double a = source.factor;
                f = [&s, a, k](const Vector& x) { return a * sk_field(s.norm, s.field, x, k); };
                desc = "f = " + format_number(a) + " S_k[u]";
            }
            const ComparisonResult cr = sym.comparison_margin(f, k);
            Row pre = error_row("precondition", k, std::max(cr.max_precondition_excess, 0.0), 1e-9,
                                "max of S_k[u] - f on the volume grid");
            rep.rows.push_back(std::move(pre));
            Row r = margin_row("min_margin", k, kNone, cr.min_margin, 0.0, 1e-4);
            r.note = desc + "; argmin r = " + format_number(cr.argmin);
            rep.rows.push_back(std::move(r));
            // Equality needs f = S_k[u] to be its own rearrangement: constant here.
            const bool exact = source.kind == SourceSpec::Kind::operator_field && source.factor == 1.0;
            if (s.radial && s.exponent == 2.0 && exact) {
                double worst = 0.0;
                for (double mg : cr.margin) {
                    worst = std::max(worst, std::abs(mg));
                }
                Row e = error_row("equality_radial", k, worst, 1e-4, "max |rho - v|");
                e.reference = 0.0;
                rep.rows.push_back(std::move(e));
            }
            DataFile file{"margin_" + order_tag(k), {"r", "rho", "v", "margin"}, {}};
            for (std::size_t i = 0; i < cr.radii.size(); ++i) {
                const double r0 = cr.radii[i];
                const double rho = cr.margin[i] + cr.solution.profile.value(std::min(r0, cr.solution.outer_radius));
                file.rows.push_back({r0, rho, rho - cr.margin[i], cr.margin[i]});
            }
            rep.files.push_back(std::move(file));
        });
    }
    return rep;
}

TaskReport task_sobolev(Symmetrizer& sym, const Subject& s, const std::vector<int>& orders,
                        const std::vector<double>& exponents)
{
    TaskReport rep;
    rep.task = "sobolev";
    const int n = s.field.dimension();
    for (int k : orders) {
        for (double p : exponents) {
            if (p >= n - k + 1) {
                Row r;
                r.item = "outside_sharp_range";
                r.k = k;
                r.p = p;
                r.pass = true;
                r.note = "p >= n-k+1: no sharp constant, not evaluated";
                rep.rows.push_back(std::move(r));
                continue;
            }
            guarded(rep, k, [&] {
                const double c = sobolev_constant(n, k, p, s.norm.wulff_volume());
                Row cr = error_row("sharp_constant", k, 0.0, 0.0);
                cr.p = p;
                cr.value = c;
                cr.error = kNone;
                cr.pass = c > 0.0 && std::isfinite(c);
                cr.note = "q = " + format_number(n * p / (n - k + 1 - p));
                rep.rows.push_back(std::move(cr));
                const MarginReport mr = sym.sobolev_margin(k, p);
                Row r = margin_row("sobolev_margin", k, p, mr.rhs, mr.lhs, 1e-4 * (1.0 + mr.rhs));
                r.lhs = mr.lhs;
                r.rhs = mr.rhs;
                r.note = "C I_{k,p}[u] - ||u||_q^p";
                rep.rows.push_back(std::move(r));
            });
        }
    }
    return rep;
}

Report run(const ExperimentConfig& config)
{
    const auto start = Clock::now();
    Report report;
    report.config = config.echo;
    std::optional<Subject> subject;
    std::optional<Symmetrizer> sym;
    std::string setup_error;
    try {
        subject.emplace(subject_from_config(config));
    } catch (const std::exception& e) {
        setup_error = e.what();
    }
    for (const std::string& name : config.tasks) {
        const auto t0 = Clock::now();
        TaskReport rep;
        rep.task = name;
        try {
            if (name == "invariants") {
                rep = task_invariants(config.seed);
            } else if (!subject) {
                rep.rows.push_back(failure_row(setup_error));
            } else if (name == "identities") {
                rep = task_identities(*subject, config.orders, config.seed);
            } else if (name == "mixedvol") {
                rep = task_mixedvol(*subject, config.radii);
            } else if (name == "af") {
                rep = task_af(*subject);
            } else {
                if (!sym) {
                    sym.emplace(subject->norm, subject->field, subject->options);
                }
                if (name == "symmetrize") {
                    rep = task_symmetrize(*sym, *subject, config.orders, config.exponents);
                } else if (name == "polya_szego") {
                    rep = task_polya_szego(*sym, *subject, config.orders, config.exponents);
                } else if (name == "compare") {
                    rep = task_compare(*sym, *subject, config.orders, config.source);
                } else if (name == "sobolev") {
                    rep = task_sobolev(*sym, *subject, config.orders, config.exponents);
                } else {
                    throw ConfigError("unknown task " + name);
                }
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            rep.rows.push_back(failure_row(e.what()));
        }
        rep.task = name;
        rep.runtime_seconds = seconds_since(t0);
        report.tasks.push_back(std::move(rep));
    }
    report.runtime_seconds = seconds_since(start);
    return report;
}

Report run_check(const std::vector<int>& dimensions, std::uint64_t seed, bool verbose)
{
    const auto start = Clock::now();
    Report report;
    report.config = {{"command", "check"}, {"dimensions", dimensions}, {"seed", seed}};
    {
        const auto t0 = Clock::now();
        TaskReport inv = task_invariants(seed);
        inv.runtime_seconds = seconds_since(t0);
        report.tasks.push_back(std::move(inv));
    }
    for (int n : dimensions) {
        for (const CorpusCase& cc : corpus(n)) {
            const auto t0 = Clock::now();
            std::string preset = "quadratic_ellipsoid";
            const std::string shape = cc.name.substr(cc.name.find('/') + 1);
            if (shape == "perturbed") {
                preset = "perturbed_radial";
            } else if (shape == "wulff_ball" || shape == "radial_power4") {
                preset = "radial_power";
            }
            const double a = cc.name.find("radial_power4") != std::string::npos ? 4.0 : 2.0;
            Subject s{cc.name, cc.norm, cc.field, cc.options, preset, cc.radial, cc.radial ? 1.0 : 0.0, a,
                      cc.options.rays, cc.options.volume};
            if (n == 3) {
                const bool fine = cc.norm.family() == NormFamily::regularized_p;
                s.probe_rays = fine ? RayResolution{128, 64} : RayResolution{64, 32};
                if (fine) {
                    // the radial fixed point (1e-6) needs the sweep this fine; the
                    // corpus default stops at 64 x 32 for runtime
                    s.options.rays = s.probe_rays;
                    s.options.coarea.rays = s.probe_rays;
                }
                s.probe_volume = VolumeResolution{fine ? RayResolution{96, 48} : RayResolution{64, 32}, 16};
            }
            std::vector<int> orders;
            for (int k = 1; k <= n; ++k) {
                orders.push_back(k);
            }
            const std::vector<double> exponents{1.0, 2.0};
            Symmetrizer sym(s.norm, s.field, s.options);
            std::vector<TaskReport> parts;
            parts.push_back(task_identities(s, orders, seed));
            parts.push_back(task_mixedvol(s, {0.5, 1.0, 2.0}));
            parts.push_back(task_af(s));
            parts.push_back(task_symmetrize(sym, s, orders, exponents));
            parts.push_back(task_polya_szego(sym, s, orders, exponents));
            parts.push_back(task_compare(sym, s, orders, SourceSpec{}));
            parts.push_back(task_sobolev(sym, s, orders, exponents));
            const double elapsed = seconds_since(t0);
            for (TaskReport& part : parts) {
                part.task = std::to_string(n) + "d_" + cc.name + "_" + part.task;
                std::replace(part.task.begin(), part.task.end(), '/', '_');
                part.files.clear();
                part.runtime_seconds = elapsed / static_cast<double>(parts.size());
                if (verbose) {
                    std::cerr << (part.pass() ? "pass  " : "FAIL  ") << part.task << '\n';
                }
                report.tasks.push_back(std::move(part));
            }
        }
    }
    report.runtime_seconds = seconds_since(start);
    return report;
}

}  // namespace wulffsym::cli
