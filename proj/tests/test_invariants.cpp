#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "wulffsym/error.hpp"
#include "wulffsym/invariants.hpp"

using namespace wulffsym;

namespace {

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

SquareMatrix mat2(double a, double b, double c, double d)
{
    SquareMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("sigma_k small vectors")
{
    const std::vector<double> l{1, 2, 3};
    CHECK(sigma_k(l, 2) == doctest::Approx(11));
    CHECK(sigma_k(l, 0) == 1.0);
    const std::vector<double> ones{1, 1, 1, 1};
    CHECK(sigma_k(ones, 2) == doctest::Approx(6));
    CHECK_THROWS_AS((void)sigma_k(l, 4), DomainError);
    CHECK_THROWS_AS((void)sigma_k(l, -1), DomainError);
}

TEST_CASE("sk closed forms")
{
    SquareMatrix d = SquareMatrix::Zero(3, 3);
    d.diagonal() << 1, 2, 3;
    CHECK(sk(d, 3) == doctest::Approx(6));
    CHECK(sk(d, 2) == doctest::Approx(11));
    CHECK(sk(d, 0) == 1.0);
    const SquareMatrix rot = mat2(0, 1, -1, 0);
    CHECK(sk(rot, 2) == doctest::Approx(1));
    CHECK(sk(rot, 1) == doctest::Approx(0));
    CHECK_THROWS_AS((void)sk(d, 4), DomainError);
}

TEST_CASE("sk matches the eigenvalues of products of SPD matrices")
{
    std::mt19937_64 rng(7);
    const int n = 5;
    for (int trial = 0; trial < 20; ++trial) {
        SquareMatrix g = random_matrix(rng, n);
        SquareMatrix h = random_matrix(rng, n);
        const SquareMatrix pq = (g * g.transpose() + SquareMatrix::Identity(n, n)) *
                                (h * h.transpose() + SquareMatrix::Identity(n, n));
        const Eigen::VectorXd ev = Eigen::EigenSolver<SquareMatrix>(pq, false).eigenvalues().real();
        const std::vector<double> lam(ev.data(), ev.data() + n);
        for (int k = 0; k <= n; ++k) {
            const double ref = sigma_k(lam, k);
            CHECK(std::abs(sk(pq, k) - ref) <= 1e-10 * (1.0 + std::abs(ref)));
        }
    }
}

TEST_CASE("fast paths agree with the delta-sum oracle")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const SquareMatrix a = random_matrix(rng, 4);
        for (int k = 1; k <= 4; ++k) {
            const double o = sk_delta_oracle(a, k);
            CHECK(std::abs(sk(a, k) - o) <= 1e-12 * (1.0 + std::abs(o)));
            CHECK(std::abs(sk_minors(a, k) - sk_recursive(a, k)) <= 1e-12 * (1.0 + std::abs(o)));
            const SquareMatrix t = newton_transform(a, k);
            CHECK((t - newton_transform_delta_oracle(a, k)).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SquareMatrix d = SquareMatrix::Zero(3, 3);
    d.diagonal() << 1, 2, 3;
    CHECK(sk_delta_oracle(d, 2) == doctest::Approx(11));
    CHECK(sk_delta_oracle(d, 0) == 1.0);
    CHECK_THROWS_AS((void)sk_delta_oracle(SquareMatrix::Identity(9, 9), 2), CostError);
    CHECK_THROWS_AS((void)sk_delta_oracle(SquareMatrix::Identity(6, 6), 6), CostError);
}

TEST_CASE("generalized Kronecker symbol")
{
    const std::vector<int> lower{0, 1, 2};
    const std::vector<int> even{1, 2, 0};
    const std::vector<int> odd{1, 0, 2};
    const std::vector<int> repeated{0, 0, 2};
    const std::vector<int> other{0, 1, 3};
    CHECK(generalized_kronecker(lower, lower) == 1);
    CHECK(generalized_kronecker(even, lower) == 1);
    CHECK(generalized_kronecker(odd, lower) == -1);
    CHECK(generalized_kronecker(lower, repeated) == 0);
    CHECK(generalized_kronecker(other, lower) == 0);
}

TEST_CASE("newton transformation")
{
    std::mt19937_64 rng(3);
    const SquareMatrix a = random_matrix(rng, 4);
    CHECK((newton_transform(a, 1) - SquareMatrix::Identity(4, 4)).norm() == 0.0);

    const SquareMatrix m = mat2(1, 2, 3, 4);
    const SquareMatrix t = newton_transform(m, 2);
    CHECK(t(0, 0) == doctest::Approx(4));
    CHECK(t(0, 1) == doctest::Approx(-3));
    CHECK(t(1, 0) == doctest::Approx(-2));
    CHECK(t(1, 1) == doctest::Approx(1));
    CHECK(t.cwiseProduct(m).sum() == doctest::Approx(-4));
    CHECK_THROWS_AS((void)newton_transform(m, 0), DomainError);

    // entrywise central differences, step 1e-6
    const SquareMatrix b = random_matrix(rng, 3);
    for (int k = 1; k <= 3; ++k) {
        const SquareMatrix tk = newton_transform(b, k);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                SquareMatrix p = b;
                SquareMatrix q = b;
                p(i, j) += 1e-6;
                q(i, j) -= 1e-6;
                CHECK(std::abs((sk(p, k) - sk(q, k)) / 2e-6 - tk(i, j)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("newton identity and trace identity")
{
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 6; ++n) {
        const SquareMatrix a = random_matrix(rng, n);
        for (int k = 1; k <= n; ++k) {
            const SquareMatrix t = newton_transform(a, k);
            CHECK(std::abs(t.cwiseProduct(a).sum() - k * sk(a, k)) <= 1e-10);
            if (k >= 2) {
                const SquareMatrix r = t - sk(a, k - 1) * SquareMatrix::Identity(n, n) +
                                       newton_transform(a, k - 1) * a.transpose();
                CHECK(r.cwiseAbs().maxCoeff() <= 1e-10);
            }
        }
    }
}

TEST_CASE("mixed discriminant")
{
    const SquareMatrix id = SquareMatrix::Identity(2, 2);
    SquareMatrix b = SquareMatrix::Zero(2, 2);
    b.diagonal() << 2, 3;
    const std::vector<SquareMatrix> pair{id, b};
    CHECK(mixed_discriminant(pair) == doctest::Approx(2.5));

    std::mt19937_64 rng(9);
    const SquareMatrix a = random_matrix(rng, 3);
    const SquareMatrix c = random_matrix(rng, 3);
    const std::vector<SquareMatrix> copies{a, a, a};
    CHECK(mixed_discriminant(copies) == doctest::Approx(sk(a, 3)).epsilon(1e-12));
    const std::vector<SquareMatrix> ac{a, c};
    const std::vector<SquareMatrix> ca{c, a};
    CHECK(mixed_discriminant(ac) == doctest::Approx(mixed_discriminant(ca)).epsilon(1e-12));

    // binomial expansion of S_2(A + C)
    const std::vector<SquareMatrix> aa{a, a};
    const std::vector<SquareMatrix> cc{c, c};
    CHECK(sk(a + c, 2) == doctest::Approx(mixed_discriminant(aa) + 2 * mixed_discriminant(ac) +
                                          mixed_discriminant(cc))
                              .epsilon(1e-10));

    // linear in the first slot
    const SquareMatrix d = random_matrix(rng, 3);
    const std::vector<SquareMatrix> lin{2.0 * a - d, c, d};
    const std::vector<SquareMatrix> l1{a, c, d};
    const std::vector<SquareMatrix> l2{d, c, d};
    CHECK(mixed_discriminant(lin) ==
          doctest::Approx(2 * mixed_discriminant(l1) - mixed_discriminant(l2)).epsilon(1e-10));

    const std::vector<SquareMatrix> bad{id, SquareMatrix::Identity(3, 3)};
    CHECK_THROWS_AS((void)mixed_discriminant(bad), DomainError);
}

TEST_CASE("homogeneity of degree k")
{
    std::mt19937_64 rng(13);
    const SquareMatrix a = random_matrix(rng, 5);
    for (double c : {0.5, 2.0, -3.0}) {
        for (int k = 0; k <= 5; ++k) {
            CHECK(sk(c * a, k) == doctest::Approx(std::pow(c, k) * sk(a, k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("sk_all agrees with single-order calls")
{
    std::mt19937_64 rng(17);
    const SquareMatrix a = random_matrix(rng, 6);
    const std::vector<double> all = sk_all(a);
    REQUIRE(all.size() == 7);
    for (int k = 0; k <= 6; ++k) {
        CHECK(all[static_cast<std::size_t>(k)] == doctest::Approx(sk(a, k)).epsilon(1e-12));
    }
}
