#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "wulffsym/bodies.hpp"
#include "wulffsym/error.hpp"
#include "wulffsym/field_ops.hpp"
#include "wulffsym/invariants.hpp"

using namespace wulffsym;
using std::numbers::pi;

namespace {

std::vector<Norm> norms(int n)
{
    SquareMatrix m = SquareMatrix::Identity(n, n);
    m(0, 0) = 2.0;
    m(0, 1) = m(1, 0) = 0.5;
    return {Norm::euclidean(n), Norm::ellipsoid(m), Norm::regularized_p(n, 3.0, 5e-2)};
}

Vector random_point(std::mt19937_64& rng, int n, double scale)
{
    std::uniform_real_distribution<double> unit(-scale, scale);
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        v(i) = unit(rng);
    }
    return v;
}

SquareMatrix random_spd(std::mt19937_64& rng, int n)
{
    const SquareMatrix g = random_point(rng, n * n, 1.0).reshaped(n, n);
    return g * g.transpose() + SquareMatrix::Identity(n, n);
}

FieldJet dual_field_jet(const Norm& f, const Vector& x)
{
    const DualJet d = f.dual_jet(x);
    return FieldJet{d.value, d.gradient, d.hessian};
}

SquareMatrix ellipse_q(int n)
{
    SquareMatrix q = SquareMatrix::Identity(n, n);
    q(0, 0) = 0.25;
    return q;
}

}  // namespace

TEST_CASE("anisotropic Hessian: reductions")
{
    std::mt19937_64 rng(1);
    const SquareMatrix q = random_spd(rng, 3);
    const Field u = quadratic_ellipsoid(q);
    const Vector x = random_point(rng, 3, 0.3);
    const FieldJet j = u.jet(x);
    CHECK((aniso_hessian(Norm::euclidean(3), j) - j.hessian).norm() <= 1e-14);

    const Norm ell = norms(3)[1];
    const FieldJet flat{-0.5, Vector::Zero(3), q};
    CHECK(aniso_hessian(ell, flat).norm() == 0.0);

    // u = x^T M^{-1} x / 2 = F^o(x)^2 / 2 for F(xi) = sqrt(xi^T M xi): A_F[u] = I
    const SquareMatrix minv = ell.matrix().inverse();
    for (int s = 0; s < 100; ++s) {
        const Vector y = random_point(rng, 3, 1.0);
        const FieldJet jy{0.5 * y.dot(minv * y), minv * y, minv};
        CHECK((aniso_hessian(ell, jy) - SquareMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("A = B + C split")
{
    std::mt19937_64 rng(2);
    for (const Norm& f : norms(3)) {
        const Field u = quadratic_ellipsoid(random_spd(rng, 3));
        const FieldJet j = u.jet(random_point(rng, 3, 0.3));
        const AnisoHessianSplit sp = aniso_hessian_split(f, j);
        CHECK((sp.a - sp.b - sp.c).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + sp.a.norm()));
        CHECK((sp.a - aniso_hessian(f, j)).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + sp.a.norm()));
    }
}

TEST_CASE("S_k of the squared dual norm is C(n,k)")
{
    std::mt19937_64 rng(3);
    for (int n : {2, 3}) {
        for (const Norm& f : norms(n)) {
            const Field u = radial_power(f, 2.0);
            for (int s = 0; s < 20; ++s) {
                const Vector x = random_point(rng, n, 0.5);
                for (int k = 1; k <= n; ++k) {
                    CHECK(sk_field(f, u, x, k) == doctest::Approx(binomial(n, k)).epsilon(1e-8));
                }
            }
        }
    }
    const Field ball = quadratic_ellipsoid(SquareMatrix::Identity(3, 3));
    CHECK(sk_field(Norm::euclidean(3), ball, Vector::Constant(3, 0.1), 1) == doctest::Approx(3));
}

TEST_CASE("S_1 is the Finsler Laplacian")
{
    std::mt19937_64 rng(4);
    for (const Norm& f : norms(2)) {
        const Field u = quadratic_ellipsoid(random_spd(rng, 2));
        for (int s = 0; s < 20; ++s) {
            const Vector x = random_point(rng, 2, 0.3);
            // div of x -> F(grad u) grad F(grad u) by central differences
            const double h = 1e-5;
            double div = 0.0;
            for (int i = 0; i < 2; ++i) {
                Vector a = x;
                Vector b = x;
                a(i) += h;
                b(i) -= h;
                const NormJet ja = f.eval_jet(u.first_order(a).gradient);
                const NormJet jb = f.eval_jet(u.first_order(b).gradient);
                div += (ja.value * ja.gradient(i) - jb.value * jb.gradient(i)) / (2.0 * h);
            }
            CHECK(std::abs(sk_field(f, u, x, 1) - div) <= 1e-6);
        }
    }
}

TEST_CASE("level curvature of Wulff spheres")
{
    std::mt19937_64 rng(5);
    for (int n : {2, 3}) {
        for (const Norm& f : norms(n)) {
            for (int s = 0; s < 20; ++s) {
                const Vector x = random_point(rng, n, 1.0);
                const FieldJet j = dual_field_jet(f, x);
                const double t = j.value;
                for (int k = 0; k < n; ++k) {
                    const LevelCurvature c = level_curvature(f, j, k);
                    const double ref = binomial(n - 1, k) / std::pow(t, k);
                    CHECK(c.value == doctest::Approx(ref).epsilon(1e-8));
                    CHECK(c.via_newton == doctest::Approx(ref).epsilon(1e-8));
                }
            }
        }
    }
    Vector x(3);
    x << 0.0, 0.6, 0.8;
    CHECK(level_curvature(Norm::euclidean(3), dual_field_jet(Norm::euclidean(3), 2.0 * x), 1).value ==
          doctest::Approx(1.0));
}

TEST_CASE("two forms of the level curvature agree on random quadratics")
{
    std::mt19937_64 rng(6);
    for (const Norm& f : norms(2)) {
        const Field u = quadratic_ellipsoid(random_spd(rng, 2));
        const LevelSetSample smp = sample_level_set(f, u, 0.0, RayResolution{100, 0});
        REQUIRE(smp.size() == 100);
        for (const Vector& x : smp.points) {
            for (int k = 0; k < 2; ++k) {
                CHECK(level_curvature(f, u, x, k).discrepancy <= 1e-8);
            }
        }
    }
    const Field u = quadratic_ellipsoid(SquareMatrix::Identity(2, 2));
    CHECK_THROWS_AS((void)level_curvature(norms(2)[1], u, Vector::Zero(2), 1), DegenerateLevelError);
}

TEST_CASE("Newton tensor of the anisotropic Hessian is divergence free")
{
    std::mt19937_64 rng(7);
    for (const Norm& f : norms(3)) {
        const Field u = perturbed_radial(f, 0.2, random_spd(rng, 3) / 4.0);
        const Vector x = random_point(rng, 3, 0.3);
        for (int k = 1; k <= 3; ++k) {
            auto residual = [&](double h) {
                Vector div = Vector::Zero(3);
                for (int j = 0; j < 3; ++j) {
                    Vector a = x;
                    Vector b = x;
                    a(j) += h;
                    b(j) -= h;
                    div += ((newton_field(f, u.jet(a), k) - newton_field(f, u.jet(b), k)) / (2.0 * h)).col(j);
                }
                return div.cwiseAbs().maxCoeff();
            };
            const double r1 = residual(2e-3);
            const double r2 = residual(1e-3);
            if (r2 > 1e-9) {
                CHECK(std::log2(r1 / r2) >= 1.8);
            }
        }
    }
}

TEST_CASE("Hessian integrals: closed forms and co-area agreement")
{
    const Norm e = Norm::euclidean(2);
    const Field disc = quadratic_ellipsoid(SquareMatrix::Identity(2, 2));
    const Field ellipse = quadratic_ellipsoid(ellipse_q(2));
    CHECK(hessian_integral(e, disc, 1) == doctest::Approx(pi / 2).epsilon(1e-10));
    CHECK(hessian_integral(e, disc, 2) == doctest::Approx(pi / 4).epsilon(1e-10));
    CHECK(hessian_integral(e, ellipse, 1) == doctest::Approx(5 * pi / 8).epsilon(1e-10));

    LevelGrid lg = default_level_grid(2);
    lg.rays = RayResolution{512, 0};
    CHECK(hessian_integral_coarea(e, disc, 1, lg).value == doctest::Approx(pi / 2).epsilon(1e-3));
    CHECK(hessian_integral_coarea(e, disc, 2, lg).value == doctest::Approx(pi / 4).epsilon(1e-3));
    CHECK(hessian_integral_coarea(e, ellipse, 1, lg).value == doctest::Approx(5 * pi / 8).epsilon(1e-3));
}

TEST_CASE("generalized integral reductions")
{
    for (int n : {2, 3}) {
        for (const Norm& f : norms(n)) {
            const Field u = perturbed_radial(f, 0.2, SquareMatrix::Identity(n, n) * 0.3);
            const VolumeGrid g = build_volume_grid(u, default_volume_resolution(n));
            for (int k = 1; k <= n; ++k) {
                CHECK(generalized_integral(f, u, k, k + 1.0, g) ==
                      doctest::Approx(k * hessian_integral(f, u, k, g)).epsilon(1e-4));
            }
            for (double p : {1.0, 2.5}) {
                const double direct = g.integrate([&](const Vector& x) {
                    return std::pow(f.value(u.first_order(x).gradient), p);
                });
                CHECK(generalized_integral(f, u, 1, p, g) == doctest::Approx(direct).epsilon(1e-10));
            }
            // radial u = (F^o^2 - 1)/2: n kappa C(n-1,k-1) / (n - k + p + 1)
            const Field r = radial_power(f, 2.0);
            const VolumeGrid gr = build_volume_grid(r, default_volume_resolution(n));
            for (int k = 1; k <= n; ++k) {
                for (double p : {1.0, 2.0, 3.5}) {
                    const double ref = n * f.wulff_volume() * binomial(n - 1, k - 1) / (n - k + p + 1.0);
                    CHECK(generalized_integral(f, r, k, p, gr) == doctest::Approx(ref).epsilon(1e-4));
                }
            }
        }
    }
}
