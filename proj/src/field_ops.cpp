#include "wulffsym/field_ops.hpp"

#include <cmath>
#include <string>

#include "wulffsym/bodies.hpp"
#include "wulffsym/error.hpp"
#include "wulffsym/invariants.hpp"

namespace wulffsym {
namespace {

constexpr double kDegenerateGradient = 1e-10;

void check_order(int k, int lo, int hi, const char* what)
{
    if (k < lo || k > hi) {
        throw DomainError(std::string(what) + ": order k=" + std::to_string(k) + " out of range");
    }
}

double checked(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw NumericError(std::string(what) + ": non-finite quadrature value");
    }
    return v;
}

}  // namespace

SquareMatrix aniso_hessian(const Norm& f, const FieldJet& jet)
{
    if (f.is_euclidean()) {
        return jet.hessian;
    }
    if (jet.gradient.squaredNorm() == 0.0) {
        const auto n = jet.hessian.rows();
        return SquareMatrix::Zero(n, n);
    }
    return f.half_square_hessian(jet.gradient) * jet.hessian;
}

AnisoHessianSplit aniso_hessian_split(const Norm& f, const FieldJet& jet)
{
    if (jet.gradient.norm() < kDegenerateGradient) {
        throw DegenerateLevelError("aniso_hessian_split: gradient vanishes");
    }
    const NormJet fj = f.eval_jet(jet.gradient);
    AnisoHessianSplit out;
    out.b = fj.value * fj.hessian * jet.hessian;
    out.c = fj.gradient * (fj.gradient.transpose() * jet.hessian);
    out.a = out.b + out.c;
    return out;
}

double sk_field(const Norm& f, const Field& u, const Vector& x, int k)
{
    return sk(aniso_hessian(f, u.jet(x)), k);
}

SquareMatrix newton_field(const Norm& f, const FieldJet& jet, int k)
{
    return newton_transform(aniso_hessian(f, jet), k);
}

SquareMatrix curvature_matrix(const Norm& f, const FieldJet& jet)
{
    if (jet.gradient.norm() < kDegenerateGradient) {
        throw DegenerateLevelError("level set is degenerate (|grad u| < 1e-10)");
    }
    return f.eval_jet(jet.gradient).hessian * jet.hessian;
}

LevelCurvature level_curvature(const Norm& f, const FieldJet& jet, int k)
{
    const int n = static_cast<int>(jet.gradient.size());
    check_order(k, 0, n - 1, "level_curvature");
    LevelCurvature out;
    out.value = sk(curvature_matrix(f, jet), k);
    const NormJet fj = f.eval_jet(jet.gradient);
    const SquareMatrix t = newton_field(f, jet, k + 1);
    const double contraction = fj.gradient.dot(t * jet.gradient);
    out.via_newton = contraction / std::pow(fj.value, k + 1);
    const double scale = std::max(std::abs(out.value), std::abs(out.via_newton));
    out.discrepancy = scale > 0.0 ? std::abs(out.value - out.via_newton) / scale : 0.0;
    return out;
}

LevelCurvature level_curvature(const Norm& f, const Field& u, const Vector& x, int k)
{
    return level_curvature(f, u.jet(x), k);
}

double hessian_integral(const Norm& f, const Field& u, int k, const VolumeGrid& grid)
{
    check_order(k, 1, u.dimension(), "hessian_integral");
    const double value = grid.integrate([&](const Vector& x) {
        const FieldJet jet = u.jet(x);
        return -jet.value * sk(aniso_hessian(f, jet), k);
    });
    return checked(value, "hessian_integral");
}

double hessian_integral(const Norm& f, const Field& u, int k)
{
    return hessian_integral(f, u, k, build_volume_grid(u, default_volume_resolution(u.dimension())));
}

LevelGrid default_level_grid(int n)
{
    LevelGrid grid;
    grid.rays = n == 2 ? RayResolution{512, 0} : RayResolution{48, 24};
    return grid;
}

CoareaResult hessian_integral_coarea(const Norm& f, const Field& u, int k, const LevelGrid& levels)
{
    const int n = u.dimension();
    check_order(k, 1, n, "hessian_integral_coarea");
    if (levels.count < 2 || !(levels.bottom_offset > 0.0 && levels.bottom_offset < 1.0)) {
        throw DomainError("hessian_integral_coarea: invalid level grid");
    }
    const double m = u.min_value();
    const double span = -m;
    const GaussRule rule = gauss_legendre(levels.count, std::sqrt(levels.bottom_offset), 1.0);
    CoareaResult out;
    std::vector<double> terms;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double s = rule.nodes[q];
        const double t = m + span * s * s;
        LevelSetSample sample;
        try {
            sample = sample_level_set(f, u, t, levels.rays);
        } catch (const DegenerateLevelError&) {
            ++out.levels_skipped;
            continue;
        }
        std::vector<double> inner(sample.size());
        for (std::size_t i = 0; i < sample.size(); ++i) {
            inner[i] = sample.weights[i] * sample.curvatures[static_cast<std::size_t>(k - 1)][i] *
                       std::pow(sample.gradient_norms[i], k) * sample.f_of_nu[i];
        }
        terms.push_back(rule.weights[q] * 2.0 * span * s * stable_sum(inner));
        ++out.levels_used;
    }
    if (out.levels_used < levels.count / 2) {
        throw NumericError("hessian_integral_coarea: too few non-degenerate levels");
    }
    out.value = checked(stable_sum(terms) / k, "hessian_integral_coarea");
    return out;
}

double generalized_integral(const Norm& f, const Field& u, int k, double p, const VolumeGrid& grid)
{
    check_order(k, 1, u.dimension(), "generalized_integral");
    if (!(p >= 1.0)) {
        throw DomainError("generalized_integral: p must be >= 1");
    }
    const double value = grid.integrate([&](const Vector& x) {
        const FieldJet jet = u.jet(x);
        if (jet.gradient.squaredNorm() == 0.0) {
            return 0.0;
        }
        const NormJet fj = f.eval_jet(jet.gradient);
        const SquareMatrix t = newton_field(f, jet, k);
        return fj.gradient.dot(t * jet.gradient) * std::pow(fj.value, p - k);
    });
    return checked(value, "generalized_integral");
}

double generalized_integral(const Norm& f, const Field& u, int k, double p)
{
    return generalized_integral(f, u, k, p,
                                build_volume_grid(u, default_volume_resolution(u.dimension())));
}

}  // namespace wulffsym
