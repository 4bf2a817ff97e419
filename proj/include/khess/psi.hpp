// psi.hpp
//
// Right-hand sides psi(z, |p|) of the radial problem, written as a product
//
//     psi(z, p) = M * Z(z) * P(p),
//     Z(z) = c0 + c1 exp(rho z) + c2 (z^+)^q,
//     P(p) = (1 + p^gamma)^sigma,
//
// which covers every family the solver and the barrier checks need.
#pragma once

#include <string>
#include <utility>

#include "khess/dim.hpp"

namespace khess {

struct ZFactor {
    double c0 = 1.0;
    double c1 = 0.0;
    double rho = 0.0;
    double c2 = 0.0;
    double q = 0.0;

    double operator()(double z) const;
    double dz(double z) const;
};

struct PFactor {
    double gamma = 0.0;
    double sigma = 0.0;

    double operator()(double p) const;
};

class PsiSpec {
public:
    PsiSpec() = default;
    PsiSpec(std::string family, double M, ZFactor z, PFactor p);

    /// psi = M.
    static PsiSpec constant(double M);
    /// psi = M (1 + (z^+)^q)(1 + p^gamma); nonexistence regime when q + gamma <= k.
    static PsiSpec subcrit_product(double M, double q, double gamma);
    /// psi = M (1 + p^k)^alpha; gradient blow-up regime when alpha > 1.
    static PsiSpec grad_power(double M, double alpha, int k);
    /// psi = (a0 + b0 e^{rho z} + (z^+)^q [q > k]) (1 + p^{2k})^{1/2}.
    static PsiSpec exist_product(double a0, double b0, double rho, double q, int k);
    /// psi = M (z^+)^q (1 + p^k)^sigma.
    static PsiSpec power(double M, double q, int k, double sigma = 0.0);
    /// psi = M (1 + (z^+)^q)(1 + p^k)^sigma.
    static PsiSpec growth(double M, double q, int k, double sigma);
    /// psi = c e^{s z} (1 + p^k): the sub-barrier right-hand side e^z eta(z)(1+p^k)
    /// with eta(z) = c e^{(s-1) z}.
    static PsiSpec exp_grad(double c, double s, int k);

    /// Parses "family:key=value,..."; families: constant, subcrit, gradpower,
    /// exist, power, growth, expgrad, custom. Throws ParameterError.
    static PsiSpec parse(const std::string& text, const Dim& dim);

    double operator()(double z, double p) const { return M_ * zf_(z) * pf_(p); }
    double dz(double z, double p) const { return M_ * zf_.dz(z) * pf_(p); }

    const std::string& family() const { return family_; }
    double M() const { return M_; }
    const ZFactor& zfactor() const { return zf_; }
    const PFactor& pfactor() const { return pf_; }

    /// psi_z >= 0 everywhere.
    bool z_monotone() const;
    /// psi_z > 0 everywhere.
    bool z_strict() const;
    /// psi does not depend on z.
    bool z_independent() const;
    /// psi > 0 everywhere.
    bool positive() const;

    /// Flags recomputed by sampling psi_z on a (z, p) grid: {monotone, strict}.
    std::pair<bool, bool> sampled_flags() const;

    /// Lower bound M (z^+)^q with q > k, if this psi has one: {M, q}.
    /// Returns {0, 0} when no such bound is visible in the factors.
    std::pair<double, double> power_lower_bound(int k) const;

    std::string describe() const;

    /// Scaled copy, K * psi.
    PsiSpec scaled(double K) const;

private:
    std::string family_ = "constant";
    double M_ = 1.0;
    ZFactor zf_{};
    PFactor pf_{};
};

} // namespace khess
