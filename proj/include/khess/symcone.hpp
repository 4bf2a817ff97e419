// symcone.hpp
//
// Elementary symmetric functions of eigenvalue vectors and symmetric
// matrices, Garding cone membership, and Maclaurin-type bounds.
// Everything here is templated on the Eigen scalar type; integer scalars give
// exact results for s_k.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "khess/dim.hpp"
#include "khess/errors.hpp"

namespace khess {

/// binomial(n, k) as a double; exact for the small orders used here.
inline double binomial(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return std::round(r);
}

inline double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Coefficients S_0..S_kmax of prod_i (1 + lambda_i t), O(n * kmax).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
elementary_symmetric_all(const Eigen::MatrixBase<Derived>& lambda, int kmax)
{
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = lambda.size();
    if (kmax < 0 || kmax > n)
        throw ParameterError("kmax out of range [0, n]");
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(kmax + 1);
    e(0) = Scalar(1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Scalar li = lambda(i);
        const Eigen::Index top = std::min<Eigen::Index>(i + 1, kmax);
        for (Eigen::Index j = top; j >= 1; --j)
            e(j) += li * e(j - 1);
    }
    return e;
}

/// k-th elementary symmetric function S_k(lambda).
template <typename Derived>
typename Derived::Scalar s_k(const Eigen::MatrixBase<Derived>& lambda, int k)
{
    if (k < 1 || k > lambda.size())
        throw ParameterError("s_k: k=" + std::to_string(k) + " outside [1, " +
                             std::to_string(lambda.size()) + "]");
    return elementary_symmetric_all(lambda, k)(k);
}

/// Spectrum of the symmetric part of A (tridiagonalization + implicit QL).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
symmetric_spectrum(const Eigen::MatrixBase<Derived>& A)
{
    using Scalar = typename Derived::Scalar;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (A.rows() != A.cols())
        throw ParameterError("symmetric matrix expected, got " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()));
    const Mat sym = (A + A.transpose()) / Scalar(2);
    Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("symmetric eigenvalue iteration did not converge");
    return es.eigenvalues();
}

/// S_k(A) = S_k(eigenvalues of A); A is symmetrized on entry.
template <typename Derived>
typename Derived::Scalar s_k_matrix(const Eigen::MatrixBase<Derived>& A, int k)
{
    const auto lam = symmetric_spectrum(A);
    return s_k(lam, k);
}

/// Open cone Gamma_k: S_j(lambda) > 0 for j = 1..k.
template <typename Derived>
bool in_gamma_k(const Eigen::MatrixBase<Derived>& lambda, int k)
{
    if (k < 1 || k > lambda.size()) return false;
    const auto e = elementary_symmetric_all(lambda, k);
    for (int j = 1; j <= k; ++j)
        if (!(e(j) > 0)) return false;
    return true;
}

/// Closure of Gamma_k up to a relative rounding allowance.
template <typename Derived>
bool in_gamma_k_closure(const Eigen::MatrixBase<Derived>& lambda, int k, double tol = 1e-10)
{
    const int n = static_cast<int>(lambda.size());
    if (k < 1 || k > n) return false;
    const auto e = elementary_symmetric_all(lambda.template cast<double>(), k);
    const double amax = lambda.template cast<double>().cwiseAbs().maxCoeff();
    for (int j = 1; j <= k; ++j) {
        const double scale = 1.0 + binomial(n, j) * std::pow(amax, j);
        if (e(j) < -tol * scale) return false;
    }
    return true;
}

/// A_k = (n-1)! / (k! (n-k)!), so that n * A_k = binomial(n, k).
/// k = n is rejected unless allow_full_order is set.
inline double a_k_const(int n, int k, bool allow_full_order = false)
{
    if (n < 2 || k < 1 || k > n)
        throw ParameterError("a_k_const: need n >= 2 and 1 <= k <= n");
    if (k == n && !allow_full_order)
        throw ParameterError("a_k_const: k = n is outside the radial range k <= n-1");
    return binomial(n, k) / n;
}

/// RHS - LHS of
///   S_{k+1}/binom(n,k+1) <= (S_k/binom(n,k))^{(k+1)/k},   lambda in Gamma_{k+1}.
template <typename Derived>
double maclaurin_gap(const Eigen::MatrixBase<Derived>& lambda, int k)
{
    const int n = static_cast<int>(lambda.size());
    if (k < 1 || k + 1 > n)
        throw ParameterError("maclaurin_gap: need 1 <= k <= n-1");
    const Eigen::VectorXd l = lambda.template cast<double>();
    if (!in_gamma_k(l, k + 1))
        throw PreconditionError("maclaurin_gap: lambda is not in Gamma_{k+1}");
    const Eigen::VectorXd e = elementary_symmetric_all(l, k + 1);
    const double lhs = e(k + 1) / binomial(n, k + 1);
    const double rhs = std::pow(e(k) / binomial(n, k), double(k + 1) / k);
    return rhs - lhs;
}

/// C1 in  C1 * S_n^{k/n} <= S_k  on the positive cone; sharp at (1,...,1).
inline double c1_const(int n, int k) { return binomial(n, k); }

/// C2 in  (1+t)^{k/n} >= C2 (1 + t^{k/n}), t >= 0; the ratio is smallest at t = 1.
inline double c2_const(int n, int k) { return std::pow(2.0, double(k) / n - 1.0); }

/// S_k(lambda) - C1 * S_n(lambda)^{k/n} for lambda in the positive cone.
template <typename Derived>
double sn_to_sk_bound(const Eigen::MatrixBase<Derived>& lambda, int k)
{
    const int n = static_cast<int>(lambda.size());
    if (k < 1 || k > n)
        throw ParameterError("sn_to_sk_bound: need 1 <= k <= n");
    const Eigen::VectorXd l = lambda.template cast<double>();
    if ((l.array() <= 0.0).any())
        throw PreconditionError("sn_to_sk_bound: lambda is not in the positive cone");
    const Eigen::VectorXd e = elementary_symmetric_all(l, n);
    return e(k) - c1_const(n, k) * std::pow(e(n), double(k) / n);
}

} // namespace khess
