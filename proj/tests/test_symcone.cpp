#include "doctest.h"

#include "khess/errors.hpp"
#include "khess/symcone.hpp"
#include "oracles.hpp"

using namespace khess;

TEST_CASE("e_k matches subset enumeration on integer vectors")
{
    oracle::Rng rng(1);
    std::uniform_int_distribution<int> dn(1, 9), dv(-6, 6);
    for (int t = 0; t < 300; ++t) {
        const int n = dn(rng);
        Eigen::VectorXd x(n);
        std::vector<long double> xl(n);
        for (int i = 0; i < n; ++i) xl[i] = x(i) = dv(rng);
        const Eigen::VectorXd e = elementary_symmetric_all(x, n);
        for (int k = 0; k <= n; ++k) CHECK(e(k) == double(oracle::subset_esym(xl, k)));
    }
}

TEST_CASE("s_k rejects orders outside [1, n]")
{
    const Eigen::VectorXd x = Eigen::VectorXd::Ones(3);
    CHECK_THROWS_AS(s_k(x, 0), ParameterError);
    CHECK_THROWS_AS(s_k(x, 4), ParameterError);
    CHECK_THROWS_AS(elementary_symmetric_all(x, -1), ParameterError);
}

TEST_CASE("s_k of a symmetric matrix is the principal minor sum")
{
    oracle::Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + t % 5;
        const Eigen::MatrixXd A = oracle::symmetric(rng, n, 2.0);
        for (int k = 1; k <= n; ++k) {
            const double want = oracle::principal_minor_sum(A, k);
            CHECK(s_k_matrix(A, k) == doctest::Approx(want).epsilon(1e-10).scale(std::pow(2.0 * n, k)));
        }
    }
}

TEST_CASE("non-square input is a parameter error")
{
    Eigen::MatrixXd A(2, 3);
    A.setOnes();
    CHECK_THROWS_AS(s_k_matrix(A, 1), ParameterError);
}

TEST_CASE("s_k is invariant under permutation and homogeneous of degree k")
{
    oracle::Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + t % 6;
        Eigen::VectorXd x = oracle::uniform_vec(rng, n, -2, 2);
        const double s = oracle::uniform_vec(rng, 1, 0.1, 3)(0);
        Eigen::VectorXd y = x.reverse();
        for (int k = 1; k <= n; ++k) {
            CHECK(s_k(y, k) == doctest::Approx(s_k(x, k)).scale(1.0));
            CHECK(s_k(Eigen::VectorXd(s * x), k) == doctest::Approx(std::pow(s, k) * s_k(x, k)).scale(1.0));
        }
    }
}

TEST_CASE("cones are nested: Gamma_k inside Gamma_j for j < k")
{
    oracle::Rng rng(4);
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + t % 5;
        const Eigen::VectorXd x = oracle::uniform_vec(rng, n, -1, 3);
        for (int k = 2; k <= n; ++k)
            if (in_gamma_k(x, k))
                for (int j = 1; j < k; ++j) CHECK(in_gamma_k(x, j));
    }
}

TEST_CASE("cone membership basics")
{
    Eigen::VectorXd x(3);
    x << 1, 1, -0.4;
    CHECK(in_gamma_k(x, 1));
    CHECK(in_gamma_k(x, 2));  // 1 - 0.8 > 0
    CHECK_FALSE(in_gamma_k(x, 3));
    x << 1, 0, 0;
    CHECK_FALSE(in_gamma_k(x, 2));
    CHECK(in_gamma_k_closure(x, 2));
    CHECK_FALSE(in_gamma_k(x, 0));
    CHECK_FALSE(in_gamma_k(x, 4));
}

TEST_CASE("Maclaurin gap is nonnegative on Gamma_{k+1} and zero on the diagonal")
{
    oracle::Rng rng(5);
    auto member = [](const Eigen::VectorXd& v, int k) { return in_gamma_k(v, k); };
    for (int t = 0; t < 400; ++t) {
        const int n = 2 + t % 5;
        const int k = 1 + t % (n - 1);
        const Eigen::VectorXd x = oracle::gamma_k_sample(rng, n, k + 1, member);
        const double scale = std::pow(x.cwiseAbs().maxCoeff(), k + 1);
        CHECK(maclaurin_gap(x, k) >= -1e-12 * scale);
    }
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(4, 1.7);
    CHECK(maclaurin_gap(c, 2) == doctest::Approx(0.0).scale(10.0));
}

TEST_CASE("Maclaurin gap needs Gamma_{k+1}")
{
    Eigen::VectorXd x(3);
    x << 1, 1, -0.9;
    CHECK_THROWS_AS(maclaurin_gap(x, 2), PreconditionError);
    CHECK_THROWS_AS(maclaurin_gap(x, 3), ParameterError);
}

TEST_CASE("S_n to S_k bound holds on the positive cone")
{
    oracle::Rng rng(6);
    for (int t = 0; t < 400; ++t) {
        const int n = 2 + t % 5;
        const Eigen::VectorXd x = oracle::uniform_vec(rng, n, 1e-3, 5);
        for (int k = 1; k <= n; ++k) {
            const double scale = oracle::binom(n, k) * std::pow(x.maxCoeff(), k);
            CHECK(sn_to_sk_bound(x, k) >= -1e-12 * scale);
        }
    }
    Eigen::VectorXd bad(2);
    bad << 1, 0;
    CHECK_THROWS_AS(sn_to_sk_bound(bad, 1), PreconditionError);
}

TEST_CASE("A_k constant and binomials")
{
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 7) == 0);
    CHECK(a_k_const(4, 2) == doctest::Approx(1.5));
    CHECK_THROWS_AS(a_k_const(3, 3), ParameterError);
    CHECK(a_k_const(3, 3, true) == doctest::Approx(1.0 / 3));
    CHECK_THROWS_AS(a_k_const(1, 1), ParameterError);
}
