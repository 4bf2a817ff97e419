// verify.cpp
#include "khess/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "khess/errors.hpp"
#include "khess/radialop.hpp"

namespace khess {

namespace {

CheckReport pointwise(const RadialProfile& profile, const PsiSpec& psi, const Dim& dim, double tol, bool sub,
                      const char* name)
{
    dim.require_radial();
    if (!(tol >= 0)) throw ParameterError("check: tol must be nonnegative");
    if (!kconvex_check(profile, dim))
        throw PreconditionError(std::string(name) + ": profile is not k-convex");
    const Eigen::VectorXd sk = sk_column(profile, dim);
    CheckReport rep;
    rep.name = name;
    rep.tol = tol;
    rep.node_count = profile.size();
    rep.min_rel_slack = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < profile.size(); ++i) {
        const double rhs = psi(profile.u()(i), std::abs(profile.du()(i)));
        const double slack = sub ? sk(i) - rhs : rhs - sk(i);
        if (!std::isfinite(slack))
            throw NumericalError(std::string(name) + ": non-finite slack at node " + std::to_string(i));
        const double rel = slack / (1.0 + std::abs(rhs));
        if (rel < rep.min_rel_slack) {
            rep.min_rel_slack = rel;
            rep.min_slack = slack;
            rep.worst_node = i;
        }
    }
    rep.passed = rep.min_rel_slack >= -tol;
    return rep;
}

} // namespace

CheckReport check_subsolution(const RadialProfile& profile, const PsiSpec& psi, const Dim& dim, double tol)
{
    return pointwise(profile, psi, dim, tol, true, "subsolution");
}

CheckReport check_supersolution(const RadialProfile& profile, const PsiSpec& phi_rhs, const Dim& dim, double tol)
{
    return pointwise(profile, phi_rhs, dim, tol, false, "supersolution");
}

const char* to_string(Comparison c)
{
    switch (c) {
    case Comparison::Holds: return "holds";
    case Comparison::Violated: return "violated";
    case Comparison::Inconclusive: return "inconclusive";
    }
    return "?";
}

ComparisonResult comparison_check(const RadialProfile& u, const RadialProfile& v, const PsiSpec& psi,
                                  const PsiSpec& phi_rhs, const Dim& dim, double tol)
{
    ComparisonResult res;
    auto inconclusive = [&](std::string why) {
        res.outcome = Comparison::Inconclusive;
        res.reason = std::move(why);
        return res;
    };

    for (int i = 0; i <= 60; ++i) {
        const double z = -30.0 + i;
        for (double p : {0.0, 0.5, 1.0, 3.0, 10.0})
            if (psi(z, p) < phi_rhs(z, p)) return inconclusive("psi < phi on the sample grid");
    }
    if (!psi.sampled_flags().second && !phi_rhs.sampled_flags().second)
        return inconclusive("neither right-hand side is strictly increasing in z");

    try {
        if (!check_subsolution(u, psi, dim, tol).passed) return inconclusive("u is not a subsolution");
        if (!check_supersolution(v, phi_rhs, dim, tol).passed) return inconclusive("v is not a supersolution");
    } catch (const PreconditionError& e) {
        return inconclusive(e.what());
    }

    const double R = std::min(u.r()(u.size() - 1), v.r()(v.size() - 1));
    if (u.value(R) > v.value(R) + 1e-8) return inconclusive("u > v at the outer radius");

    res.min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        const double r = u.r()(i);
        if (r > R) break;
        res.min_gap = std::min(res.min_gap, v.value(r) - u.u()(i));
    }
    res.outcome = res.min_gap >= -1e-8 ? Comparison::Holds : Comparison::Violated;
    return res;
}

SandwichReport sandwich_check(const Eigen::VectorXd& r, const Eigen::VectorXd& u, double R, const SubBarrier& sub,
                              double M, double q, const Dim& dim, double tol, std::optional<double> B)
{
    if (r.size() != u.size()) throw ParameterError("sandwich: column lengths differ");
    if (sub.a < R) throw PreconditionError("sandwich: sub-barrier radius must be >= R");
    const UpperEnvelope hb(dim, M, q, B);

    SandwichReport rep;
    rep.lower.name = "sandwich-lower";
    rep.upper.name = "sandwich-upper";
    for (CheckReport* c : {&rep.lower, &rep.upper}) {
        c->tol = tol;
        c->min_slack = std::numeric_limits<double>::infinity();
    }
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double d = R - r(i);
        if (!(d > 0)) continue;
        const double lo = u(i) - sub.value(R - d);
        const double hi = hb(d) - u(i);
        ++rep.lower.node_count;
        ++rep.upper.node_count;
        if (lo < rep.lower.min_slack) {
            rep.lower.min_slack = lo;
            rep.lower.worst_node = i;
        }
        if (hi < rep.upper.min_slack) {
            rep.upper.min_slack = hi;
            rep.upper.worst_node = i;
        }
    }
    for (CheckReport* c : {&rep.lower, &rep.upper}) {
        c->min_rel_slack = c->min_slack;
        c->passed = c->node_count > 0 && c->min_slack >= -tol;
    }
    rep.passed = rep.lower.passed && rep.upper.passed;
    return rep;
}

SandwichReport sandwich_check(const RadialProfile& u, const SubBarrier& sub, double M, double q, const Dim& dim,
                              double tol, std::optional<double> B)
{
    return sandwich_check(u.r(), u.u(), u.radius(), sub, M, q, dim, tol, B);
}

} // namespace khess
