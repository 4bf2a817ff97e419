#include "doctest.h"

#include <cstdlib>

#include "khess/barriers.hpp"
#include "khess/errors.hpp"
#include "khess/shooter.hpp"
#include "khess/verify.hpp"
#include "oracles.hpp"

using namespace khess;

TEST_CASE("constant psi: solve reproduces the quadratic")
{
    oracle::Rng rng(41);
    for (int t = 0; t < 12; ++t) {
        const int n = 2 + t % 5;
        const int k = 1 + t % (n - 1);
        const Eigen::VectorXd v = oracle::uniform_vec(rng, 3, 0, 1);
        const double M = 0.5 + 4 * v(0), R = 0.5 + 1.5 * v(1), m = -2 + 6 * v(2);
        const SolveReport rep = solve_dirichlet_ball(PsiSpec::constant(M), Dim{n, k}, R, m);
        INFO(n << " " << k << " M=" << M << " R=" << R << " m=" << m << " " << rep.message);
        REQUIRE(rep.converged);
        const double s = oracle::constant_psi_slope(n, k, M);
        CHECK(rep.c == doctest::Approx(m - 0.5 * s * R * R).epsilon(1e-10));
        CHECK(rep.boundary_gap <= 1e-9);
        const RadialProfile& p = *rep.profile;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            const double r = p.r()(i);
            CHECK(std::abs(p.u()(i) - (m - 0.5 * s * (R * R - r * r))) < 1e-8);
        }
    }
}

TEST_CASE("solve node layout")
{
    const ShootOptions opt;
    const Eigen::VectorXd r = solve_nodes(2.0, opt);
    CHECK(r(0) == 0.0);
    CHECK(r(r.size() - 1) == 2.0);
    for (Eigen::Index i = 1; i < r.size(); ++i) CHECK(r(i) - r(i - 1) >= 1e-12 * 2.0);
    CHECK(2.0 - r(r.size() - 2) < 1e-9);
}

TEST_CASE("shots are increasing in the center value")
{
    const Dim d{3, 2};
    const PsiSpec psi = PsiSpec::exist_product(1, 1, 1, 3, 2);
    double prev = -1e300;
    for (double c : {-3.0, -2.0, -1.5, -1.0}) {
        const double uR = shoot(psi, d, 1.0, c, 1e6);
        CHECK(uR > prev);
        prev = uR;
    }
}

TEST_CASE("solutions are ordered by boundary value and deterministic")
{
    const Dim d{3, 2};
    const PsiSpec psi = PsiSpec::exist_product(1, 1, 1, 3, 2);
    const SequenceReport seq = monotone_sequence(psi, d, 1.0, 5);
    CHECK_FALSE(seq.failed_m);
    REQUIRE(seq.reports.size() == 5);
    CHECK(seq.monotone.passed);
    for (std::size_t i = 1; i < seq.reports.size(); ++i) CHECK(seq.reports[i].c > seq.reports[i - 1].c);
    const SolveReport again = solve_dirichlet_ball(psi, d, 1.0, 3.0);
    CHECK(again.c == seq.reports[2].c);
}

TEST_CASE("solver output certifies against its own right-hand side")
{
    const Dim d{4, 2};
    const PsiSpec psi = PsiSpec::exist_product(1, 1, 1, 3, 2);
    const SolveReport s = solve_dirichlet_ball(psi, d, 1.0, 2.0);
    REQUIRE(s.converged);
    CHECK(check_subsolution(*s.profile, psi, d).passed);
    CHECK(check_supersolution(*s.profile, psi, d).passed);
    CHECK(s.residual < ShootOptions{}.residual_tol);
}

TEST_CASE("bad solve parameters")
{
    const Dim d{3, 1};
    CHECK_THROWS_AS(solve_dirichlet_ball(PsiSpec::constant(1), d, -1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(solve_dirichlet_ball(PsiSpec::constant(1), d, 1.0, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(solve_dirichlet_ball(PsiSpec::constant(1), Dim{3, 3}, 1.0, 0.0), ParameterError);
}

TEST_CASE("blow-up limit exists for the superlinear product family")
{
    const Dim d{3, 2};
    const LimitReport L = blowup_limit(PsiSpec::exist_product(1, 1, 1, 3, 2), d, 1.0);
    CHECK(L.verdict == Verdict::Exists);
    REQUIRE(L.converged_at);
    REQUIRE(L.hbar_R);
    for (double c : L.centers) CHECK(c <= *L.hbar_R);
    for (const auto& s : L.sandwich) CHECK(s.passed);
    for (const auto& c : L.lower_certificates) CHECK(c.passed);
    for (std::size_t i = 1; i < L.a_m.size(); ++i) CHECK(L.a_m[i] <= L.a_m[i - 1]);
}

TEST_CASE("constant psi has no blow-up limit")
{
    const LimitReport L = blowup_limit(PsiSpec::constant(2.0), Dim{3, 2}, 1.0, 1e-6, LimitOptions{.m_max = 8});
    CHECK(L.verdict == Verdict::Diverges);
    // u_m = u_0 + m: the increments stay at 1
    for (double inc : L.increments) CHECK(inc == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::string(to_string(L.verdict)) == "diverges");
}

TEST_CASE("sub-barrier radius lands just above R")
{
    const auto ivp = solve_phi_ivp(Dim{3, 2}, EtaSpec::constant(1.0));
    for (double m : {-2.0, 0.0, 1.0, 2.0}) {
        const double a = sub_barrier_radius(*ivp, 1.0, m);
        CHECK(a > 1.0);
        const SubBarrier sb = make_sub_barrier(a, ivp);
        CHECK(sb.value(1.0) <= m + 1e-9);
    }
}

TEST_CASE("rate fit: super-barrier and envelope exponents")
{
    oracle::Rng rng(42);
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + t % 4;
        const int k = 1 + t % (n - 1);
        const double q = k + 0.5 + oracle::uniform_vec(rng, 1, 0, 3)(0);
        const Dim d{n, k};
        const SuperBarrier sb = make_super_barrier(1.0, 1.0, q, d);
        const Eigen::VectorXd r = oracle::clustered_nodes(1.0, 1e-7, 50, 300);
        Eigen::VectorXd u(r.size());
        for (Eigen::Index i = 0; i < r.size(); ++i) u(i) = sb.value(r(i));
        const RateFit w = rate_fit(r, u, 1.0, 1.0, q, d);
        CHECK(w.exponent == doctest::Approx(-(k + 1.0) / (q - k)).epsilon(1e-3));
        CHECK(w.points >= 3);

        Eigen::VectorXd h(r.size());
        for (Eigen::Index i = 0; i < r.size(); ++i) h(i) = hbar(1.0 - r(i), 1.0, q, d);
        const RateFit e = rate_fit(r, h, 1.0, 1.0, q, d);
        CHECK(e.exponent == doctest::Approx(-2.0 * k / (q - k)).epsilon(1e-9));
        CHECK(e.envelope_ratio_max == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("maximal shooting radius does not depend on the center value")
{
    const Dim d{2, 1};
    const PsiSpec psi = PsiSpec::grad_power(1.0, 2.0, 1);
    const ShootingRadius a = max_shooting_radius(psi, d, 0.0);
    const ShootingRadius b = max_shooting_radius(psi, d, 5.0);
    CHECK(a.finite);
    CHECK(a.radius == doctest::Approx(b.radius).epsilon(1e-12));
    CHECK(a.threshold == doctest::Approx(2.0));
    CHECK_THROWS(max_shooting_radius(PsiSpec::exist_product(1, 1, 1, 3, 1), d, 0.0));
}

TEST_CASE("scaling constants and the power transform of a quadratic")
{
    const Dim d{3, 2};
    const auto [alpha, a] = ScalingMode::power(3.0).constants(0.5, d);
    CHECK(alpha == doctest::Approx(4.0));
    CHECK(a == 0.0);
    const auto [alpha2, a2] = ScalingMode::exp(2.0).constants(0.5, d);
    CHECK(alpha2 == 0.0);
    CHECK(a2 == doctest::Approx(-2.0 * std::log(0.5)));
    CHECK_THROWS_AS(ScalingMode::power(3.0).constants(1.5, d), ParameterError);

    const Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(50, 0, 1);
    const RadialProfile u(1.0, r, (1.0 + r.array().square()).matrix(), 2 * r, Eigen::VectorXd::Constant(50, 2.0));
    const RadialProfile v = scaling_transform(u, 0.5, ScalingMode::power(3.0), d);
    CHECK(v.radius() == doctest::Approx(2.0));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double rho = v.r()(i);
        CHECK(v.u()(i) == doctest::Approx(0.0625 * (1 + 0.25 * rho * rho)));
    }
}

TEST_CASE("worker count honours the environment")
{
    setenv("HESS_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    unsetenv("HESS_THREADS");
    CHECK(worker_count() >= 1);
}
