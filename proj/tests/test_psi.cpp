#include "doctest.h"

#include "khess/errors.hpp"
#include "khess/psi.hpp"
#include "oracles.hpp"

using namespace khess;

TEST_CASE("family values")
{
    const Dim d{3, 2};
    CHECK(PsiSpec::parse("constant:M=2.5", d)(7.0, 100.0) == 2.5);
    // (a0 + b0 e^{rho z} + (z^+)^q) sqrt(1 + p^{2k})
    const PsiSpec e = PsiSpec::parse("exist:a0=1,b0=2,rho=0.5,q=3", d);
    CHECK(e(1.5, 2.0) == doctest::Approx((1 + 2 * std::exp(0.75) + std::pow(1.5, 3)) * std::sqrt(1 + 16.0)));
    CHECK(e(-1.0, 0.0) == doctest::Approx(1 + 2 * std::exp(-0.5)));
    const PsiSpec g = PsiSpec::parse("gradpower:M=3,alpha=1.5", d);
    CHECK(g(-9.0, 2.0) == doctest::Approx(3 * std::pow(5.0, 1.5)));
    const PsiSpec p = PsiSpec::parse("power:M=2,q=4", d);
    CHECK(p(-1.0, 3.0) == 0.0);
    CHECK(p(1.5, 3.0) == doctest::Approx(2 * std::pow(1.5, 4)));
    const PsiSpec x = PsiSpec::parse("expgrad:c=2,s=0.5", d);
    CHECK(x(1.0, 1.0) == doctest::Approx(2 * std::exp(0.5) * 2));
    const PsiSpec s = PsiSpec::parse("subcrit:M=1,q=0.5,gamma=1", d);
    CHECK(s(4.0, 3.0) == doctest::Approx(3 * 4));
}

TEST_CASE("parse errors")
{
    const Dim d{3, 2};
    CHECK_THROWS_AS(PsiSpec::parse("nosuch:M=1", d), ParameterError);
    CHECK_THROWS_AS(PsiSpec::parse("constant:X=1", d), ParameterError);
    CHECK_THROWS_AS(PsiSpec::parse("constant:M=abc", d), ParameterError);
    CHECK_THROWS_AS(PsiSpec::parse("constant:M=-1", d), ParameterError);
    CHECK_THROWS_AS(PsiSpec::parse("exist:a0=0", d), ParameterError);
}

TEST_CASE("monotonicity flags agree with sampling")
{
    const Dim d{4, 2};
    for (const char* text : {"constant:M=1", "exist:q=3", "power:M=1,q=3", "growth:M=1,q=3", "expgrad:c=1,s=1",
                             "gradpower:M=1,alpha=2", "subcrit:M=1,q=1,gamma=1"}) {
        const PsiSpec psi = PsiSpec::parse(text, d);
        const auto [mono, strict] = psi.sampled_flags();
        INFO(text);
        CHECK(mono == psi.z_monotone());
        if (strict) CHECK(psi.z_monotone());
    }
    CHECK(PsiSpec::parse("exist:q=3", d).z_strict());
    CHECK(PsiSpec::parse("constant:M=1", d).z_independent());
    CHECK_FALSE(PsiSpec::parse("power:M=1", d).positive());
}

TEST_CASE("scaled multiplies by K")
{
    oracle::Rng rng(21);
    const PsiSpec psi = PsiSpec::exist_product(1, 1, 1, 3, 2);
    for (int t = 0; t < 100; ++t) {
        const Eigen::VectorXd v = oracle::uniform_vec(rng, 3, -3, 3);
        const double K = std::abs(v(2)) + 0.1;
        CHECK(psi.scaled(K)(v(0), std::abs(v(1))) == doctest::Approx(K * psi(v(0), std::abs(v(1)))));
    }
    CHECK_THROWS_AS(psi.scaled(0.0), ParameterError);
}

TEST_CASE("dz matches a central difference")
{
    oracle::Rng rng(22);
    const PsiSpec psi = PsiSpec::parse("custom:M=1.5,c0=1,c1=2,rho=0.7,c2=0.5,q=2.5,gamma=2,sigma=0.5", Dim{3, 1});
    for (int t = 0; t < 100; ++t) {
        const Eigen::VectorXd v = oracle::uniform_vec(rng, 2, 0.1, 3);
        const double h = 1e-6;
        const double fd = (psi(v(0) + h, v(1)) - psi(v(0) - h, v(1))) / (2 * h);
        CHECK(psi.dz(v(0), v(1)) == doctest::Approx(fd).epsilon(1e-6));
    }
}
