#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "wulffsym/error.hpp"
#include "wulffsym/invariants.hpp"
#include "wulffsym/symmetrize.hpp"

using namespace wulffsym;
using std::numbers::pi;

namespace {

Field ellipse()
{
    SquareMatrix q = SquareMatrix::Identity(2, 2);
    q(0, 0) = 0.25;
    return quadratic_ellipsoid(q);
}

Norm tilted(int n)
{
    SquareMatrix m = SquareMatrix::Identity(n, n);
    m(0, 0) = 2.0;
    m(0, 1) = m(1, 0) = 0.5;
    return Norm::ellipsoid(m);
}

}  // namespace

TEST_CASE("zeta profiles and the symmetrand of the (2,1) ellipse")
{
    Symmetrizer sym(Norm::euclidean(2), ellipse(), default_symmetrize_options(2));
    const MonotoneProfile z0 = sym.zeta_profile(1);
    const MonotoneProfile z1 = sym.zeta_profile(2);
    // boundary zeta_1 = perimeter / 2 pi, perimeter = 4 a E(e)
    const double zeta1 = 8.0 * std::comp_ellint_2(std::sqrt(0.75)) / (2 * pi);
    for (double t : {-0.4, -0.25, -0.1, 0.0}) {
        CHECK(z0.value(t) == doctest::Approx(std::sqrt(2.0 * (1.0 + 2.0 * t))).epsilon(1e-6));
        CHECK(z1.value(t) == doctest::Approx(zeta1 * std::sqrt(1.0 + 2.0 * t)).epsilon(1e-6));
    }

    const SymmetrizationResult& s = sym.symmetrand(1);
    CHECK(s.outer_radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(s.min_value == -0.5);
    CHECK(s.rho.value(0.0) == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(std::abs(s.rho.value(s.outer_radius)) <= 1e-10);
    for (double r : {0.2, 0.6, 1.0, 1.3}) {
        CHECK(s.rho.value(r) == doctest::Approx(r * r / 4 - 0.5).epsilon(1e-6));
    }
    // rho inverts the zeta profile
    for (double t : {-0.45, -0.3, -0.05}) {
        CHECK(s.rho.value(z0.value(t)) == doctest::Approx(t).epsilon(1e-6));
    }
}

TEST_CASE("radial fields are fixed points")
{
    for (const Norm& f : {Norm::euclidean(2), tilted(2), Norm::regularized_p(2, 3.0, 5e-2)}) {
        Symmetrizer sym(f, radial_power(f, 2.0, 1.5), default_symmetrize_options(2));
        for (int k = 1; k <= 2; ++k) {
            const SymmetrizationResult& s = sym.symmetrand(k);
            CHECK(s.outer_radius == doctest::Approx(1.5).epsilon(1e-6));
            for (double r : {0.3, 0.8, 1.2}) {
                CHECK(s.rho.value(r) == doctest::Approx(0.5 * (r * r - 2.25)).epsilon(1e-6));
            }
            const MarginReport ps = sym.ps_margin(k);
            CHECK(std::abs(ps.margin) <= 1e-4 * (1.0 + ps.lhs));
            const ChainReport chain = sym.chain_inequality(k);
            CHECK(std::abs(chain.min_relative_margin) <= 1e-4);
        }
    }
}

TEST_CASE("Polya-Szego, L^p and chain on the ellipse")
{
    Symmetrizer sym(Norm::euclidean(2), ellipse(), default_symmetrize_options(2));
    const MarginReport ps = sym.ps_margin(1);
    CHECK(ps.lhs == doctest::Approx(5 * pi / 8).epsilon(1e-8));
    CHECK(ps.rhs == doctest::Approx(pi / 2).epsilon(1e-4));
    CHECK(ps.margin == doctest::Approx(pi / 8).epsilon(1e-3));
    CHECK(ps.cross_check == doctest::Approx(ps.lhs).epsilon(1e-3));

    // k = 1 preserves volume, so every L^p norm is unchanged
    const LpComparison l2 = sym.lp_compare(1, 2.0);
    CHECK(l2.lhs == doctest::Approx(pi / 6).epsilon(1e-6));
    CHECK(l2.rhs == doctest::Approx(pi / 6).epsilon(1e-4));
    const LpComparison sup = sym.lp_compare(1, std::numeric_limits<double>::infinity());
    CHECK(sup.lhs == 0.5);
    CHECK(sup.rhs == 0.5);
    for (double p : {1.0, 2.0}) {
        const LpComparison l = sym.lp_compare(2, p);
        CHECK(l.rhs > l.lhs);
    }
    for (int k = 1; k <= 2; ++k) {
        CHECK(sym.chain_inequality(k).min_relative_margin >= -1e-3);
        const MarginReport g = sym.ps_margin_p(k, 1.5);
        CHECK(g.margin >= -1e-4 * (1.0 + g.lhs));
    }
}

TEST_CASE("comparison with the radial problem")
{
    // S_1[u] = tr Q = 5/4 on the ellipse, so v = 5 (r^2 - 2) / 16 and rho - v = (2 - r^2)/16
    Symmetrizer sym(Norm::euclidean(2), ellipse(), default_symmetrize_options(2));
    const ComparisonResult c = sym.comparison_margin([](const Vector&) { return 1.25; }, 1);
    CHECK(c.outer_radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(c.min_margin >= -1e-4);
    CHECK(c.max_precondition_excess <= 1e-8);
    for (std::size_t i = 0; i < c.radii.size(); i += 37) {
        const double r = c.radii[i];
        CHECK(std::abs(c.margin[i] - (2.0 - r * r) / 16.0) <= 1e-5);
    }
}

TEST_CASE("sharp Sobolev constants")
{
    // isoperimetric constant in the plane
    CHECK(sobolev_constant(2, 1, 1.0, pi) == doctest::Approx(0.5 / std::sqrt(pi)).epsilon(1e-12));
    // Aubin-Talenti in R^3 with p = 2: K^2 = 4/(n(n-2)) |S^3|^{-2/3}
    const double talenti = 4.0 / 3.0 * std::pow(2.0 * pi * pi, -2.0 / 3.0);
    CHECK(sobolev_constant(3, 1, 2.0, 4.0 * pi / 3.0) == doctest::Approx(talenti).epsilon(1e-12));
    // scaling in the Wulff volume
    CHECK(sobolev_constant(2, 1, 1.0, 4.0 * pi) == doctest::Approx(0.25 / std::sqrt(pi)).epsilon(1e-12));

    CHECK_THROWS_AS((void)sobolev_constant(2, 1, 2.0, pi), DomainError);
    CHECK_THROWS_AS((void)sobolev_constant(3, 2, 2.5, pi), DomainError);
    CHECK_THROWS_AS((void)sobolev_constant(2, 1, 0.5, pi), DomainError);

    Symmetrizer sym(tilted(2), ellipse(), default_symmetrize_options(2));
    const MarginReport m = sym.sobolev_margin(1, 1.0);
    CHECK(m.lhs <= m.rhs * (1.0 + 1e-4));
    CHECK_THROWS_AS((void)sym.sobolev_margin(2, 1.0), DomainError);
}

TEST_CASE("three dimensions: Euclidean ball")
{
    SymmetrizeOptions opt = default_symmetrize_options(3);
    opt.levels = 60;
    const Norm e = Norm::euclidean(3);
    Symmetrizer sym(e, quadratic_ellipsoid(SquareMatrix::Identity(3, 3)), opt);
    for (int k = 1; k <= 3; ++k) {
        const SymmetrizationResult& s = sym.symmetrand(k);
        CHECK(s.outer_radius == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(s.rho.value(0.5) == doctest::Approx(-0.375).epsilon(1e-6));
        const MarginReport ps = sym.ps_margin(k);
        CHECK(ps.lhs == doctest::Approx(4.0 * pi / 3.0 * binomial(3, k) / (3 - k + k + 2.0)).epsilon(1e-6));
        CHECK(std::abs(ps.margin) <= 1e-4 * (1.0 + ps.lhs));
    }
    CHECK_THROWS_AS((void)sym.symmetrand(4), DomainError);
}
