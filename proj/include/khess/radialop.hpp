// radialop.hpp
//
// S_k of the Hessian of a radial function u(|x|). With q = u'/r the spectrum
// is (u'', q, ..., q) and
//
//     S_k(D^2 u) = A_k [ (n-k) q^k + k q^{k-1} u'' ],   A_k = binom(n,k)/n,
//
// equivalently A_k r^{1-n} (r^{n-k} (u')^k)'.
#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "khess/dim.hpp"
#include "khess/errors.hpp"
#include "khess/psi.hpp"
#include "khess/radial_profile.hpp"
#include "khess/symcone.hpp"

namespace khess {

/// Hessian spectrum of a radial function: (u'', u'/r, ..., u'/r), or
/// (u'', ..., u'') at the center.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> radial_eigs(Scalar up, Scalar upp, Scalar r, int n)
{
    if (n < 2) throw ParameterError("radial_eigs: n must be >= 2");
    if (r < Scalar(0)) throw DomainError("radial_eigs: negative radius");
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lam(n);
    if (r == Scalar(0)) {
        if (up != Scalar(0))
            throw DomainError("radial_eigs: nonzero slope at the center is singular");
        lam.setConstant(upp);
        return lam;
    }
    lam.setConstant(up / r);
    lam(0) = upp;
    return lam;
}

/// S_k(D^2 u) for radial u from (u', u'', r). Center value binom(n,k) u''^k.
template <typename Scalar>
Scalar sk_radial(Scalar up, Scalar upp, Scalar r, const Dim& dim)
{
    dim.require_radial();
    const int n = dim.n, k = dim.k;
    if (r < Scalar(0)) throw DomainError("sk_radial: negative radius");
    const Scalar C = Scalar(binomial(n, k));
    if (r == Scalar(0)) {
        if (up != Scalar(0))
            throw DomainError("sk_radial: nonzero slope at the center is singular");
        return C * std::pow(upp, k);
    }
    using std::pow;
    const Scalar q = up / r;
    const Scalar bracket = Scalar(n - k) * pow(q, k) + Scalar(k) * pow(q, k - 1) * upp;
    return C * bracket / Scalar(n);
}

/// Residual of A_k (r^{n-k} (u')^k)' - r^{n-1} psi(u, u') at each node, with
/// the flux derivative taken from the local quadratic interpolant of z through
/// neighbouring nodes. The last entry is one-sided; interior entries are the
/// meaningful ones.
Eigen::VectorXd flux_residual(const RadialProfile& profile, const PsiSpec& psi, const Dim& dim);

/// Largest |flux residual| over interior nodes, each scaled by 1 + r^{n-1}|psi|.
double max_relative_flux_residual(const RadialProfile& profile, const PsiSpec& psi, const Dim& dim);

/// Spectrum at every node in the closure of Gamma_k (strict: in Gamma_k).
bool kconvex_check(const RadialProfile& profile, const Dim& dim, bool strict = false);

/// S_k(D^2 u) at every node, using RadialProfile::second.
Eigen::VectorXd sk_column(const RadialProfile& profile, const Dim& dim);

} // namespace khess
