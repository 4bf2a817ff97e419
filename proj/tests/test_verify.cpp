#include "doctest.h"

#include "khess/errors.hpp"
#include "khess/shooter.hpp"
#include "khess/verify.hpp"
#include "oracles.hpp"

using namespace khess;

namespace {

RadialProfile quadratic(double s, double R, int N, double c)
{
    const Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(N, 0, R);
    const Eigen::VectorXd u = (c + 0.5 * s * r.array().square()).matrix();
    const Eigen::VectorXd du = s * r;
    return RadialProfile(R, r, u, du, Eigen::VectorXd::Constant(N, s));
}

} // namespace

TEST_CASE("exact solution is both a sub- and a supersolution")
{
    const Dim d{4, 2};
    const double M = 2.0;
    const RadialProfile u = quadratic(oracle::constant_psi_slope(4, 2, M), 1.0, 300, 0.0);
    const CheckReport sub = check_subsolution(u, PsiSpec::constant(M), d);
    const CheckReport sup = check_supersolution(u, PsiSpec::constant(M), d);
    CHECK(sub.passed);
    CHECK(sup.passed);
    CHECK(std::abs(sub.min_rel_slack) < 1e-14);
    CHECK(sub.node_count == 300);
}

TEST_CASE("a larger right-hand side breaks the subsolution check and keeps the supersolution")
{
    const Dim d{3, 1};
    const RadialProfile u = quadratic(oracle::constant_psi_slope(3, 1, 1.0), 1.0, 100, 0.0);
    const CheckReport sub = check_subsolution(u, PsiSpec::constant(1.1), d);
    CHECK_FALSE(sub.passed);
    CHECK(sub.min_slack == doctest::Approx(-0.1));
    CHECK(sub.worst_node >= 0);
    CHECK(check_supersolution(u, PsiSpec::constant(1.1), d).passed);
}

TEST_CASE("non-k-convex input is a precondition failure")
{
    const RadialProfile u = quadratic(-1.0, 1.0, 50, 0.0);
    CHECK_THROWS_AS(check_subsolution(u, PsiSpec::constant(1.0), Dim{3, 1}), PreconditionError);
}

TEST_CASE("comparison between solutions with ordered boundary data")
{
    const Dim d{3, 2};
    const PsiSpec psi = PsiSpec::exist_product(1, 1, 1, 3, 2);
    const SolveReport lo = solve_dirichlet_ball(psi, d, 1.0, 0.0);
    const SolveReport hi = solve_dirichlet_ball(psi, d, 1.0, 1.0);
    REQUIRE(lo.converged);
    REQUIRE(hi.converged);
    const ComparisonResult ok = comparison_check(*lo.profile, *hi.profile, psi, psi, d);
    CHECK(ok.outcome == Comparison::Holds);
    CHECK(ok.min_gap > 0);
    const ComparisonResult swapped = comparison_check(*hi.profile, *lo.profile, psi, psi, d);
    CHECK(swapped.outcome == Comparison::Inconclusive);
    CHECK(std::string(to_string(swapped.outcome)) == "inconclusive");
}

TEST_CASE("comparison needs strict monotonicity in z")
{
    const Dim d{3, 1};
    const double s = oracle::constant_psi_slope(3, 1, 1.0);
    const RadialProfile u = quadratic(s, 1.0, 50, -1.0), v = quadratic(s, 1.0, 50, 0.0);
    const ComparisonResult r = comparison_check(u, v, PsiSpec::constant(1.0), PsiSpec::constant(1.0), d);
    CHECK(r.outcome == Comparison::Inconclusive);
    CHECK_FALSE(r.reason.empty());
}

TEST_CASE("sandwich between the barriers for a moderate boundary value")
{
    const Dim d{3, 2};
    const PsiSpec psi = PsiSpec::exist_product(1, 1, 1, 3, 2);
    const SolveReport s = solve_dirichlet_ball(psi, d, 1.0, 1.0);
    REQUIRE(s.converged);
    // eta = 1 is below e^{-z} psi on z >= 0; a well below the blow-up keeps v under m
    const SubBarrier sub = make_sub_barrier(1.5, d, EtaSpec::constant(1.0));
    const SandwichReport sw = sandwich_check(*s.profile, sub, 1.0, 3.0, d);
    CHECK(sw.upper.passed);
    CHECK(sw.lower.node_count == sw.upper.node_count);
}
