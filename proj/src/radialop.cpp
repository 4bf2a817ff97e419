// radialop.cpp
#include "khess/radialop.hpp"

#include <cmath>
#include <string>

namespace khess {

Eigen::VectorXd flux_residual(const RadialProfile& profile, const PsiSpec& psi, const Dim& dim)
{
    dim.require_radial();
    const int n = dim.n, k = dim.k;
    const double A = a_k_const(n, k);
    const Eigen::Index N = profile.size();
    const auto& r = profile.r();
    const auto& u = profile.u();
    const auto& du = profile.du();
    if (N < 3) throw ParameterError("flux_residual: need at least three nodes");
    // z' from the quadratic through neighbouring (r, z) pairs; slopes only, so
    // no cancellation in u on clustered nodes.
    Eigen::VectorXd z(N);
    for (Eigen::Index i = 0; i < N; ++i) z(i) = std::pow(r(i), n - k) * std::pow(std::abs(du(i)), k);
    auto deriv = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c, double x) {
        const double xa = r(a), xb = r(b), xc = r(c);
        return z(a) * ((x - xb) + (x - xc)) / ((xa - xb) * (xa - xc)) +
               z(b) * ((x - xa) + (x - xc)) / ((xb - xa) * (xb - xc)) +
               z(c) * ((x - xa) + (x - xb)) / ((xc - xa) * (xc - xb));
    };
    Eigen::VectorXd res(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double ri = r(i);
        double dflux = 0.0; // z ~ r^n at the center
        if (ri > 0.0) dflux = i + 1 < N ? deriv(i - 1, i, i + 1, ri) : deriv(i - 2, i - 1, i, ri);
        res(i) = A * dflux - std::pow(ri, n - 1) * psi(u(i), std::abs(du(i)));
        if (!std::isfinite(res(i)))
            throw NumericalError("flux_residual: non-finite value at node " + std::to_string(i));
    }
    return res;
}

double max_relative_flux_residual(const RadialProfile& profile, const PsiSpec& psi, const Dim& dim)
{
    const Eigen::VectorXd res = flux_residual(profile, psi, dim);
    const auto& r = profile.r();
    double worst = 0.0;
    for (Eigen::Index i = 1; i + 1 < profile.size(); ++i) {
        const double scale = 1.0 + std::pow(r(i), dim.n - 1) * std::abs(psi(profile.u()(i), std::abs(profile.du()(i))));
        worst = std::max(worst, std::abs(res(i)) / scale);
    }
    return worst;
}

bool kconvex_check(const RadialProfile& profile, const Dim& dim, bool strict)
{
    const auto& r = profile.r();
    const auto& du = profile.du();
    for (Eigen::Index i = 0; i < profile.size(); ++i) {
        const double up = i == 0 ? 0.0 : du(i);
        const Eigen::VectorXd lam = radial_eigs(up, profile.second(i), r(i), dim.n);
        const bool ok = strict ? in_gamma_k(lam, dim.k) : in_gamma_k_closure(lam, dim.k);
        if (!ok) return false;
    }
    return true;
}

Eigen::VectorXd sk_column(const RadialProfile& profile, const Dim& dim)
{
    Eigen::VectorXd sk(profile.size());
    for (Eigen::Index i = 0; i < profile.size(); ++i) {
        const double up = i == 0 ? 0.0 : profile.du()(i);
        sk(i) = sk_radial(up, profile.second(i), profile.r()(i), dim);
    }
    return sk;
}

} // namespace khess
