#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "wulffsym/anisotropy.hpp"
#include "wulffsym/error.hpp"
#include "wulffsym/invariants.hpp"

using namespace wulffsym;

namespace {

Vector vec(std::initializer_list<double> v)
{
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) {
        out(i++) = x;
    }
    return out;
}

SquareMatrix diag(std::initializer_list<double> v)
{
    return vec(v).asDiagonal();
}

std::vector<Norm> all_norms(int n)
{
    SquareMatrix m = SquareMatrix::Identity(n, n);
    m(0, 0) = 2.0;
    m(0, 1) = m(1, 0) = 0.4;
    return {Norm::euclidean(n), Norm::ellipsoid(m), Norm::regularized_p(n, 3.0, 1e-2),
            Norm::regularized_p(n, 1.5, 5e-2)};
}

Vector random_vector(std::mt19937_64& rng, int n)
{
    std::normal_distribution<double> g;
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        v(i) = g(rng);
    }
    return v;
}

}  // namespace

TEST_CASE("norm jets: closed forms")
{
    const NormJet e = Norm::euclidean(2).eval_jet(vec({3, 4}));
    CHECK(e.value == doctest::Approx(5));
    CHECK(e.gradient(0) == doctest::Approx(0.6));
    CHECK(e.gradient(1) == doctest::Approx(0.8));

    const Norm ell = Norm::ellipsoid(diag({4, 1}));
    const NormJet j = ell.eval_jet(vec({1, 0}));
    CHECK(j.value == doctest::Approx(2));
    CHECK(j.gradient(0) == doctest::Approx(2));
    CHECK(j.gradient(1) == doctest::Approx(0).epsilon(1e-15));

    CHECK_THROWS_AS((void)ell.eval_jet(Vector::Zero(2)), DomainError);
    CHECK_THROWS_AS((void)ell.dual_jet(Vector::Zero(2)), DomainError);
}

TEST_CASE("dual norms: closed forms and a brute-force sup")
{
    CHECK(Norm::euclidean(2).dual_value(vec({3, 4})) == doctest::Approx(5));
    const Norm ell = Norm::ellipsoid(diag({4, 1}));
    CHECK(ell.dual_value(vec({1, 0})) == doctest::Approx(0.5));

    // sup <xi, x> / F(xi) over 10^4 directions, for every family
    const Vector x = vec({0.7, -0.4});
    for (const Norm& f : all_norms(2)) {
        double best = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double th = 2.0 * std::numbers::pi * i / 10000.0;
            const Vector xi = vec({std::cos(th), std::sin(th)});
            best = std::max(best, xi.dot(x) / f.value(xi));
        }
        CHECK(f.dual_value(x) == doctest::Approx(best).epsilon(1e-6));
    }
}

TEST_CASE("norm identities on random samples")
{
    std::mt19937_64 rng(21);
    for (int n : {2, 3}) {
        for (const Norm& f : all_norms(n)) {
            for (int s = 0; s < 200; ++s) {
                const Vector xi = random_vector(rng, n);
                const NormJet j = f.eval_jet(xi);
                CHECK(j.value > 0.0);
                CHECK(j.gradient.dot(xi) == doctest::Approx(j.value).epsilon(1e-10));
                CHECK((j.hessian * xi).norm() <= 1e-8 * (1.0 + j.hessian.norm()));
                for (double c : {0.5, 2.0, 10.0}) {
                    CHECK(f.value(c * xi) == doctest::Approx(c * j.value).epsilon(1e-12));
                    CHECK(f.dual_value(c * xi) == doctest::Approx(c * f.dual_value(xi)).epsilon(1e-12));
                }
                // F(grad F^o(x)) = 1 and F^o(x) grad F(grad F^o(x)) = x
                const DualJet d = f.dual_jet(xi);
                const NormJet back = f.eval_jet(d.gradient);
                CHECK(back.value == doctest::Approx(1.0).epsilon(1e-8));
                CHECK((d.value * back.gradient - xi).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + xi.norm()));
                // uniform ellipticity: all leading principal minors positive
                const SquareMatrix h = f.half_square_hessian(xi);
                for (int m = 1; m <= n; ++m) {
                    CHECK(sk(h.topLeftCorner(m, m), m) > 0.0);
                }
            }
        }
    }
}

TEST_CASE("dual hessian matches differences of the dual gradient")
{
    std::mt19937_64 rng(23);
    const Norm f = Norm::regularized_p(3, 3.0, 5e-2);
    for (int s = 0; s < 50; ++s) {
        const Vector x = random_vector(rng, 3);
        const DualJet d = f.dual_jet(x);
        for (int i = 0; i < 3; ++i) {
            Vector a = x;
            Vector b = x;
            a(i) += 1e-6;
            b(i) -= 1e-6;
            const Vector fd = (f.dual_jet(a).gradient - f.dual_jet(b).gradient) / 2e-6;
            CHECK((fd - d.hessian.col(i)).cwiseAbs().maxCoeff() <= 1e-6 * (1.0 + d.hessian.norm()));
        }
    }
}

TEST_CASE("duality involution on ellipsoids")
{
    std::mt19937_64 rng(29);
    SquareMatrix m(3, 3);
    m << 2, 0.3, 0, 0.3, 1, 0.2, 0, 0.2, 1.5;
    const Norm f = Norm::ellipsoid(m);
    const Norm ff = f.dual_norm().dual_norm();
    for (int s = 0; s < 50; ++s) {
        const Vector x = random_vector(rng, 3);
        CHECK(ff.value(x) == doctest::Approx(f.value(x)).epsilon(1e-8));
        CHECK(f.dual_norm().value(x) == doctest::Approx(f.dual_value(x)).epsilon(1e-12));
    }
}

TEST_CASE("Wulff volumes")
{
    CHECK(Norm::euclidean(2).wulff_volume() == doctest::Approx(std::numbers::pi));
    CHECK(Norm::euclidean(3).wulff_volume() == doctest::Approx(4.0 * std::numbers::pi / 3.0));
    CHECK(Norm::ellipsoid(diag({4, 1})).wulff_volume() == doctest::Approx(2.0 * std::numbers::pi));

    // regularized_p: polar quadrature against an independent 1D polar integral
    const Norm f = Norm::regularized_p(2, 3.0, 1e-2);
    double area = 0.0;
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
        const double th = 2.0 * std::numbers::pi * (i + 0.5) / m;
        const double r = 1.0 / f.dual_value(vec({std::cos(th), std::sin(th)}));
        area += 0.5 * r * r * 2.0 * std::numbers::pi / m;
    }
    CHECK(f.wulff_volume() == doctest::Approx(area).epsilon(1e-8));
    CHECK_THROWS_AS((void)Norm::regularized_p(4, 3.0).wulff_volume(), CapabilityError);
}

TEST_CASE("family parsing and validation")
{
    CHECK(parse_norm_family("ellipsoid") == NormFamily::ellipsoid);
    CHECK(to_string(NormFamily::regularized_p) == "regularized_p");
    CHECK_THROWS((void)parse_norm_family("crystalline"));
    CHECK_THROWS((void)Norm::ellipsoid(diag({1, -1})));
    CHECK_THROWS((void)Norm::regularized_p(2, 1.0));
}
