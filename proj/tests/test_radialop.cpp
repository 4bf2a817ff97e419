#include "doctest.h"

#include <sstream>

#include "khess/errors.hpp"
#include "khess/radialop.hpp"
#include "oracles.hpp"

using namespace khess;

TEST_CASE("radial S_k matches the principal minors of the full Hessian")
{
    oracle::Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        const int n = 2 + t % 5;
        const int k = 1 + t % (n - 1);
        const Eigen::VectorXd x = oracle::uniform_vec(rng, n, -2, 2);
        const Eigen::VectorXd d = oracle::uniform_vec(rng, 2, -3, 3);
        const Eigen::MatrixXd H = oracle::radial_hessian(x, d(0), d(1));
        const double want = oracle::principal_minor_sum(H, k);
        const double got = sk_radial(d(0), d(1), x.norm(), Dim{n, k});
        CHECK(got == doctest::Approx(want).epsilon(1e-9).scale(1.0 + std::abs(want)));
    }
}

TEST_CASE("u = r^2/2 gives S_k = C(n,k) everywhere")
{
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; k < n; ++k)
            for (double r : {0.0, 0.3, 1.0, 5.0}) CHECK(sk_radial(r, 1.0, r, Dim{n, k}) == binomial(n, k));
}

TEST_CASE("radial eigenvalues")
{
    const Eigen::VectorXd l = radial_eigs(2.0, 5.0, 0.5, 4);
    CHECK(l(0) == 5.0);
    CHECK(l(3) == 4.0);
    CHECK(radial_eigs(0.0, 3.0, 0.0, 3).isApproxToConstant(3.0));
    CHECK_THROWS_AS(radial_eigs(1.0, 3.0, 0.0, 3), DomainError);
    CHECK_THROWS_AS(radial_eigs(1.0, 3.0, -1.0, 3), DomainError);
    CHECK_THROWS_AS(sk_radial(1.0, 1.0, 1.0, Dim{3, 3}), ParameterError);
}

namespace {

RadialProfile quadratic(double s, double R, int N, double c = 0.0)
{
    const Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(N, 0, R);
    const Eigen::VectorXd u = (c + 0.5 * s * r.array().square()).matrix();
    const Eigen::VectorXd du = s * r;
    return RadialProfile(R, r, u, du, Eigen::VectorXd::Constant(N, s));
}

} // namespace

TEST_CASE("flux residual on the exact constant-psi solution")
{
    for (auto [n, k] : {std::pair{2, 1}, {3, 2}, {5, 3}}) {
        const double M = 1.7;
        const double s = oracle::constant_psi_slope(n, k, M);
        const RadialProfile p = quadratic(s, 1.3, 200);
        const PsiSpec psi = PsiSpec::constant(M);
        // z = s^k r^n: the three-point derivative is exact for n <= 2, second order beyond
        const double e1 = max_relative_flux_residual(p, psi, Dim{n, k});
        CHECK(e1 < 1e-4);
        if (n > 2) {
            const double e2 = max_relative_flux_residual(quadratic(s, 1.3, 399), psi, Dim{n, k});
            CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
        } else {
            CHECK(e1 < 1e-12);
        }
        CHECK(kconvex_check(p, Dim{n, k}, true));
        const Eigen::VectorXd sk = sk_column(p, Dim{n, k});
        CHECK(sk.isApproxToConstant(M, 1e-12));
    }
}

TEST_CASE("flux residual detects a wrong right-hand side")
{
    const RadialProfile p = quadratic(1.0, 1.0, 100);
    CHECK(max_relative_flux_residual(p, PsiSpec::constant(5.0), Dim{3, 1}) > 0.1);
}

TEST_CASE("flux residual needs three nodes")
{
    const RadialProfile p = quadratic(1.0, 1.0, 2);
    CHECK_THROWS_AS(flux_residual(p, PsiSpec::constant(1.0), Dim{3, 1}), ParameterError);
}

TEST_CASE("concave profile is not k-convex")
{
    const RadialProfile p = quadratic(-1.0, 1.0, 50);
    CHECK_FALSE(kconvex_check(p, Dim{3, 1}));
    CHECK(kconvex_check(quadratic(0.0, 1.0, 50), Dim{3, 2}));
    CHECK_FALSE(kconvex_check(quadratic(0.0, 1.0, 50), Dim{3, 2}, true));
}

TEST_CASE("profile CSV round trip")
{
    const RadialProfile p = quadratic(0.7, 2.0, 33, -1.25);
    std::stringstream ss;
    p.write_csv(ss);
    const RadialProfile q = RadialProfile::read_csv(ss, 2.0);
    REQUIRE(q.size() == p.size());
    CHECK((q.r() - p.r()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((q.u() - p.u()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((q.du() - p.du()).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(q.has_exact_second());
    CHECK((*q.ddu() - *p.ddu()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("CSV reader accepts r,u,du,sk without a second-derivative column")
{
    std::stringstream ss("r,u,du,sk\n0,1,0,2\n0.5,1.25,1,2\n1,2,2,2\n");
    const RadialProfile p = RadialProfile::read_csv(ss);
    CHECK(p.size() == 3);
    CHECK(p.radius() == 1.0);
    CHECK_FALSE(p.has_exact_second());
    std::stringstream bad("x,y\n0,1\n");
    CHECK_THROWS_AS(RadialProfile::read_csv(bad), ParameterError);
    const Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(3, 0.1, 1);
    CHECK_THROWS_AS(RadialProfile(1.0, r, r, r), ParameterError);
}

TEST_CASE("Hermite interpolation reproduces cubics")
{
    const Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(9, 0, 2);
    const Eigen::VectorXd u = r.array().square() * (1.0 + r.array());
    const Eigen::VectorXd du = r.array() * (2.0 + 3.0 * r.array());
    const RadialProfile p(2.0, r, u, du);
    for (double s : {0.1, 0.77, 1.31, 1.999}) {
        CHECK(p.value(s) == doctest::Approx(s * s * (1 + s)).epsilon(1e-13));
        CHECK(p.slope(s) == doctest::Approx(s * (2 + 3 * s)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(p.value(2.5), DomainError);
}
