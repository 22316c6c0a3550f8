#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "wulffsym/bodies.hpp"
#include "wulffsym/error.hpp"
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

SquareMatrix ellipse_q()
{
    SquareMatrix q = SquareMatrix::Identity(2, 2);
    q(0, 0) = 0.25;
    return q;
}

// perimeter of the (2,1) ellipse: 4 a E(e), e^2 = 1 - b^2/a^2
double ellipse_perimeter()
{
    return 8.0 * std::comp_ellint_2(std::sqrt(0.75));
}

RayResolution rays(int n, const Norm& f)
{
    if (n == 2) {
        return RayResolution{1024, 0};
    }
    return f.family() == NormFamily::regularized_p ? RayResolution{128, 64} : RayResolution{64, 32};
}

}  // namespace

TEST_CASE("sampled circles and ellipses")
{
    const Norm e = Norm::euclidean(2);
    const Field disc = quadratic_ellipsoid(SquareMatrix::Identity(2, 2));
    const LevelSetSample c = sample_level_set(e, disc, -0.375, RayResolution{256, 0});
    for (const Vector& x : c.points) {
        CHECK(x.norm() == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(c.area() == doctest::Approx(pi).epsilon(1e-6));
    for (double s0 : c.curvatures[0]) {
        CHECK(s0 == 1.0);
    }
    for (double w : c.weights) {
        CHECK(w > 0.0);
    }

    const Field ell = quadratic_ellipsoid(ellipse_q());
    const LevelSetSample b = sample_level_set(e, ell, 0.0, RayResolution{2048, 0});
    CHECK(ellipse_perimeter() == doctest::Approx(9.68844822).epsilon(1e-8));
    CHECK(b.area() == doctest::Approx(ellipse_perimeter()).epsilon(1e-5));
    for (const Vector& x : b.points) {
        CHECK(std::abs(ell.value(x)) < 1e-12);
    }
    for (double s1 : b.curvatures[1]) {
        CHECK(s1 >= -1e-8);
    }
}

TEST_CASE("ellipse mixed volumes and mean radii")
{
    const Norm e = Norm::euclidean(2);
    const LevelSetSample b = sample_level_set(e, quadratic_ellipsoid(ellipse_q()), 0.0, RayResolution{2048, 0});
    CHECK(mixed_volume(b, 0) == doctest::Approx(2 * pi).epsilon(1e-6));
    CHECK(mixed_volume(b, 1) == doctest::Approx(ellipse_perimeter() / 2).epsilon(1e-5));
    CHECK(mixed_volume(b, 1) == doctest::Approx(4.84422411).epsilon(1e-5));
    CHECK(mean_radius(b, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(mean_radius(b, 1) == doctest::Approx(ellipse_perimeter() / (2 * pi)).epsilon(1e-6));
    const std::vector<AfMargin> af = af_margins(b);
    REQUIRE(af.size() == 1);
    CHECK(af[0].margin == doctest::Approx(0.12769).epsilon(1e-3));
    CHECK_THROWS_AS((void)mixed_volume(b, 2), DomainError);
}

TEST_CASE("Wulff balls: W_k = kappa r^(n-k), flat AF margins, curvature rows")
{
    for (int n : {2, 3}) {
        for (const Norm& f : norms(n)) {
            const RayResolution res = rays(n, f);
            for (double r : {0.5, 1.0, 2.0}) {
                const LevelSetSample s = sample_level_set(f, radial_power(f, 2.0, r), 0.0, res);
                for (int k = 0; k < n; ++k) {
                    CHECK(mixed_volume(s, k) ==
                          doctest::Approx(f.wulff_volume() * std::pow(r, n - k)).epsilon(1e-4));
                    CHECK(mean_radius(s, k) == doctest::Approx(r).epsilon(1e-4));
                }
                for (const AfMargin& a : af_margins(s)) {
                    CHECK(std::abs(a.margin) <= 1e-6);
                }
            }
            // level -1/4 of (F^o^2 - 1)/2 is the Wulff sphere of radius 1/sqrt 2
            const LevelSetSample s = sample_level_set(f, radial_power(f, 2.0), -0.25, res);
            const double radius = std::sqrt(0.5);
            for (int j = 0; j < n; ++j) {
                const double ref = binomial(n - 1, j) / std::pow(radius, j);
                for (std::size_t i = 0; i < s.size(); i += 7) {
                    CHECK(s.curvatures[static_cast<std::size_t>(j)][i] == doctest::Approx(ref).epsilon(1e-8));
                }
            }
        }
    }
}

TEST_CASE("monotonicity under inclusion and scaling")
{
    for (const Norm& f : norms(2)) {
        const Field u = perturbed_radial(f, 0.2, ellipse_q());
        const LevelSetSample inner = sample_level_set(f, u, 0.5 * u.min_value(), RayResolution{1024, 0});
        const LevelSetSample outer = sample_level_set(f, u, 0.0, RayResolution{1024, 0});
        for (int k = 0; k < 2; ++k) {
            CHECK(mixed_volume(inner, k) < mixed_volume(outer, k));
            CHECK(mean_radius(inner, k) < mean_radius(outer, k));
        }
    }
    // W_k(cK) = c^{n-k} W_k(K): quadratic fields with Q / c^2 describe cK
    const Norm f = norms(3)[1];
    SquareMatrix q(3, 3);
    q << 1.2, 0.1, 0, 0.1, 0.8, 0.2, 0, 0.2, 1.0;
    const RayResolution res{64, 32};
    const LevelSetSample a = sample_level_set(f, quadratic_ellipsoid(q), 0.0, res);
    const LevelSetSample b = sample_level_set(f, quadratic_ellipsoid(q / 9.0), 0.0, res);
    for (int k = 0; k < 3; ++k) {
        CHECK(mixed_volume(b, k) == doctest::Approx(std::pow(3.0, 3 - k) * mixed_volume(a, k)).epsilon(1e-6));
    }
}

TEST_CASE("Reilly rate matches level differencing")
{
    for (int n : {2, 3}) {
        for (const Norm& f : norms(n)) {
            const Field u = perturbed_radial(f, 0.2, SquareMatrix::Identity(n, n) * 0.3);
            const RayResolution res = rays(n, f);
            const double t = 0.5 * u.min_value();
            const double dt = 1e-3 * std::abs(u.min_value());
            const LevelSetSample mid = sample_level_set(f, u, t, res);
            const LevelSetSample up = sample_level_set(f, u, t + dt, res);
            const LevelSetSample down = sample_level_set(f, u, t - dt, res);
            for (int k = 0; k < n; ++k) {
                const double fd = (mixed_volume(up, k) - mixed_volume(down, k)) / (2 * dt);
                CHECK(mixed_volume_rate(mid, k) == doctest::Approx(fd).epsilon(1e-3));
                const double fz = (mean_radius(up, k) - mean_radius(down, k)) / (2 * dt);
                CHECK(mean_radius_rate(mid, k) == doctest::Approx(fz).epsilon(1e-3));
            }
        }
    }
}

TEST_CASE("sampling errors")
{
    const Norm e = Norm::euclidean(2);
    const Field disc = quadratic_ellipsoid(SquareMatrix::Identity(2, 2));
    CHECK_THROWS_AS((void)sample_level_set(e, disc, 0.5, RayResolution{64, 0}), DomainError);
    CHECK_THROWS_AS((void)sample_level_set(e, disc, -0.6, RayResolution{64, 0}), DomainError);
}
