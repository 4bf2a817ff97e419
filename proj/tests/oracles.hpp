// Independent reference values and random generators for the tests.
#pragma once

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Rng = std::mt19937_64;

/// e_k by summing products over all k-subsets (bitmask enumeration).
inline long double subset_esym(const std::vector<long double>& x, int k)
{
    const int n = static_cast<int>(x.size());
    long double s = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        long double p = 1;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) p *= x[i];
        s += p;
    }
    return s;
}

/// S_k(A) as the sum of all k x k principal minors.
inline double principal_minor_sum(const Eigen::MatrixXd& A, int k)
{
    const int n = static_cast<int>(A.rows());
    double s = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        Eigen::MatrixXd sub(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) sub(a, b) = A(idx[a], idx[b]);
        s += sub.determinant();
    }
    return s;
}

/// Hessian of x -> u(|x|) at x, from u'(r) and u''(r).
inline Eigen::MatrixXd radial_hessian(const Eigen::VectorXd& x, double up, double upp)
{
    const double r = x.norm();
    const Eigen::Index n = x.size();
    const Eigen::VectorXd e = x / r;
    return (up / r) * Eigen::MatrixXd::Identity(n, n) + (upp - up / r) * e * e.transpose();
}

inline double binom(int n, int k)
{
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline double fact(int n) { return std::tgamma(n + 1.0); }

/// u = m - s (R^2 - r^2)/2 with S_k = C(n,k) s^k = M: the constant-psi solution.
inline double constant_psi_slope(int n, int k, double M) { return std::pow(M / binom(n, k), 1.0 / k); }

/// sup_r S_k(D^2 w)/w^q for w = (1-r^2)^{(k+1)/(k-q)}: A_k (2e)^k max(n, 2k(e+1)), e = (k+1)/(q-k).
inline double super_sup(int n, int k, double q)
{
    const double e = (k + 1.0) / (q - k);
    return binom(n, k) / n * std::pow(2 * e, k) * std::max<double>(n, 2 * k * (e + 1));
}

/// a* for M (1 + p^k)^alpha.
inline double threshold(int n, int k, double alpha, double M)
{
    return std::pow((k + 1) * fact(n - 1) / (M * (alpha - 1) * fact(k) * fact(n - k - 1)), 1.0 / k);
}

/// [0, R] with extra nodes at R - d, d log-spaced over [dmin, R/2].
inline Eigen::VectorXd clustered_nodes(double R, double dmin, int uniform, int boundary)
{
    std::vector<double> r;
    for (int i = 0; i < uniform; ++i) r.push_back(R / 2 * i / (uniform - 1));
    for (int j = 0; j < boundary; ++j) {
        const double t = double(j) / (boundary - 1);
        r.push_back(R - std::exp(std::log(R / 2) * (1 - t) + std::log(dmin) * t));
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return Eigen::Map<Eigen::VectorXd>(r.data(), Eigen::Index(r.size()));
}

// Generators.

inline Eigen::VectorXd uniform_vec(Rng& rng, int n, double lo, double hi)
{
    std::uniform_real_distribution<double> d(lo, hi);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = d(rng);
    return v;
}

inline Eigen::MatrixXd symmetric(Rng& rng, int n, double scale = 1.0)
{
    const Eigen::MatrixXd B = uniform_vec(rng, n * n, -scale, scale).reshaped(n, n);
    return (B + B.transpose()) / 2;
}

/// Point of Gamma_k: a positive vector with one coordinate pushed negative by
/// rejection until membership holds (so the boundary region gets sampled too).
template <class InGamma>
Eigen::VectorXd gamma_k_sample(Rng& rng, int n, int k, InGamma in_gamma)
{
    std::uniform_real_distribution<double> d(0.05, 3.0), neg(-3.0, 0.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (;;) {
        Eigen::VectorXd v = uniform_vec(rng, n, 0.05, 3.0);
        if (k < n) v(pick(rng)) = neg(rng);
        if (in_gamma(v, k)) return v;
    }
}

} // namespace oracle
