// barriers.hpp
//
// Explicit radial barriers for S_k(D^2 u) = psi on balls:
//
//   * SubBarrier   v^{a,eta}: S_k(D^2 v) >= e^v eta(v) (1 + |Dv|^k), v = +inf on |x| = a,
//                  built from the blow-up profile of
//                      phi' = [exp(r^k e^phi eta(phi) / A_k) - 1]^{1/k},  phi(0) = 0;
//   * SuperBarrier w^{a,M}:   S_k(D^2 w) <= M w^q,  w = lam (1 - |x/a|^2)^{(k+1)/(k-q)};
//   * UpperEnvelope h(r) = w^{r,M}(0);
//   * GradBarrier  u = a phi(|x|/a) with 1 + r phi'(r)^k = (1 - r^{k+1})^{-beta},
//                  whose normal derivative is infinite on |x| = a.
#pragma once

#include <Eigen/Core>

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "khess/check_report.hpp"
#include "khess/dim.hpp"
#include "khess/ode.hpp"
#include "khess/psi.hpp"
#include "khess/radial_profile.hpp"

namespace khess {

/// eta(z) = c e^{s z}; s = 0 is the constant family.
struct EtaSpec {
    double c = 1.0;
    double s = 0.0;

    static EtaSpec constant(double eta0);
    static EtaSpec exp(double c, double s);

    double operator()(double z) const;
    double deriv(double z) const;
    bool is_constant() const { return s == 0.0; }
    std::string describe() const;
};

/// Nondecreasing bound phi(z) = c0 + c1 e^{rho z} + c2 (z^+)^q with psi <= phi(z)(1 + p^k).
struct GrowthBound {
    double c0 = 0.0;
    double c1 = 1.0;
    double rho = 1.0;
    double c2 = 0.0;
    double q = 0.0;

    static GrowthBound constant(double c);
    static GrowthBound exp(double c, double s);
    /// M ((z^+)^q + c e^z)
    static GrowthBound power_plus_exp(double M, double q, double c);
    /// Bound derived from the factors of psi; requires P(p) <= kappa (1 + p^k).
    static GrowthBound from_psi(const PsiSpec& psi, int k);

    double operator()(double z) const;

    /// sup_{z <= 0} e^{-eps z} phi(z) finite, tested on a z-grid down to -50.
    bool decays_at_minus_infinity(double eps = 1.0) const;
};

/// Smallest eta of the form c e^{s z} with max_{y<=z} phi(y) <= e^z eta(z) on the
/// verification grid z in [z_floor, 50] (z_floor = -50 when not given).
/// Without a floor the decay condition at -infinity must hold; otherwise throws
/// PreconditionError. With a floor the inequality is only claimed for z >= z_floor.
EtaSpec eta_from_phi(const GrowthBound& phi, std::optional<double> z_floor = std::nullopt);

/// Largest violation of max_{y<=z} phi(y) <= e^z eta(z) on the grid (<= 0 means verified).
double eta_bound_violation(const GrowthBound& phi, const EtaSpec& eta, double z_lo, double z_hi = 50.0);

/// Upper bound on the blow-up time: sqrt(2k (A_k / eta(0))^{1/k}).
double phi_time_bound(const Dim& dim, const EtaSpec& eta);

/// Numerical solution of the blow-up IVP. The first phase integrates in r until
/// phi' reaches 1; the second integrates r as a function of phi up to the cap,
/// where dr/dphi is double-exponentially small, and reports T = r(cap).
class PhiSolution {
public:
    PhiSolution(const Dim& dim, const EtaSpec& eta, double rtol, double cap = 50.0);

    const Dim& dim() const { return dim_; }
    const EtaSpec& eta() const { return eta_; }
    double blowup_time() const { return T_; }
    double cap() const { return cap_; }

    /// phi'(r) from (r, phi); +inf on overflow.
    double slope(double r, double phi) const;
    /// phi''(r) from differentiating ln(1 + phi'^k) = r^k e^phi eta(phi) / A_k.
    double curvature(double r, double phi) const;
    /// |ln(1 + phi'^k) - r^k e^phi eta(phi)/A_k| / (1 + r^k e^phi eta(phi)/A_k).
    double log_identity_residual(double r, double phi) const;

    /// phi(s) for 0 <= s < T.
    double value(double s) const;

    /// Profile of phi on the given nodes (first node 0, all < T), radius T.
    RadialProfile profile(const Eigen::VectorXd& s) const;

private:
    double dr_dphi(double r, double phi) const;

    Dim dim_;
    EtaSpec eta_;
    double A_;
    double cap_;
    double T_ = 0.0;
    OdeOptions opts_;
    std::vector<double> r1_, phi1_; // phase 1 (independent variable r)
    std::vector<double> phi2_, r2_; // phase 2 (independent variable phi)
};

/// Integrates the blow-up IVP, tightening the integrator tolerance until two
/// successive blow-up times agree to tol.
std::shared_ptr<const PhiSolution> solve_phi_ivp(const Dim& dim, const EtaSpec& eta, double tol = 1e-9);

/// Node layout for barrier profiles: `nodes` points on [0, (1 - delta) a].
struct BarrierGrid {
    int nodes = 1000;
    double delta = 1e-3;

    Eigen::VectorXd unit_nodes() const;
};

struct SubBarrier {
    double a = 1.0;
    double T = 0.0;
    double shift = 0.0;
    Dim dim;
    EtaSpec eta;
    std::shared_ptr<const PhiSolution> ivp;
    RadialProfile phi;     ///< phi on [0, (1 - delta) T]
    RadialProfile profile; ///< v on [0, (1 - delta) a]

    /// v(r) = phi(T r / a) - shift, 0 <= r < a.
    double value(double r) const;
    /// e^z eta(z) (1 + p^k).
    PsiSpec rhs() const;
};

SubBarrier make_sub_barrier(double a, const Dim& dim, const EtaSpec& eta, const BarrierGrid& grid = {},
                            double tol = 1e-9);
SubBarrier make_sub_barrier(double a, std::shared_ptr<const PhiSolution> ivp, const BarrierGrid& grid = {});

/// Certifies S_k(D^2 v) >= e^v eta(v)(1 + |Dv|^k) at every profile node.
CheckReport verify_sub_barrier(const SubBarrier& sub, double tol = 1e-8);

/// Exact ratio S_k(D^2 w) / w^q for w = (1 - r^2)^{(k+1)/(k-q)} on the unit ball.
double super_ratio(double r, const Dim& dim, double q);

struct SuperConstant {
    double B = 0.0;         ///< 1.01 * sup of the ratio
    double sup = 0.0;       ///< grid supremum of the ratio
    double argmax = 0.0;    ///< radius attaining it
    double refinement = 0.0; ///< relative change under the last grid refinement
};

/// B(n, k, q) by ratio maximization over a refined grid in [0, 1 - 1e-6].
SuperConstant super_constant(const Dim& dim, double q);
inline double super_const_B(const Dim& dim, double q) { return super_constant(dim, q).B; }

struct SuperBarrier {
    double a = 1.0;
    double M = 1.0;
    double q = 2.0;
    double B = 0.0;
    double lam = 0.0;
    Dim dim;
    RadialProfile profile;

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;
    /// M (z^+)^q.
    PsiSpec rhs() const;
};

/// w^{a,M} with lam = (B / (a^{2k} M))^{1/(q-k)}. B defaults to super_const_B.
SuperBarrier make_super_barrier(double a, double M, double q, const Dim& dim, const BarrierGrid& grid = {},
                                std::optional<double> B = std::nullopt);

/// Certifies S_k(D^2 w) <= M w^q at every profile node.
CheckReport verify_super_barrier(const SuperBarrier& sup, double tol = 1e-8);

/// h(r) = (B / (r^{2k} M))^{1/(q-k)}.
double hbar(double r, double M, double q, const Dim& dim, double B);
double hbar(double r, double M, double q, const Dim& dim);

/// Cached upper envelope h(d) for one (n, k, M, q).
class UpperEnvelope {
public:
    UpperEnvelope(const Dim& dim, double M, double q, std::optional<double> B = std::nullopt);
    double operator()(double d) const;
    double B() const { return B_; }
    double M() const { return M_; }
    double q() const { return q_; }
    /// d ln h / d ln r = -2k / (q - k).
    double log_slope() const;

private:
    Dim dim_;
    double M_, q_, B_;
};

/// phi(r) = int_0^r [((1 - t^{k+1})^{-beta} - 1) / t]^{1/k} dt, beta = 1/(alpha - 1).
double grad_phi(double r, int k, double alpha);
double grad_phi_d1(double r, int k, double alpha);
double grad_phi_d2(double r, int k, double alpha);
/// |1 + r phi'^k - (1 - r^{k+1})^{-beta}| relative to the right side.
double grad_identity_residual(double r, int k, double alpha);

struct GradBarrier {
    double a = 1.0;
    double alpha = 2.0;
    double beta = 1.0;
    Dim dim;
    RadialProfile phi_hat; ///< phi on [0, 1 - delta]
    RadialProfile profile; ///< a phi(r / a)

    /// (k+1)(n-1)! / (a^k (alpha-1) k! (n-k-1)!).
    double bound_constant() const;
    /// bound_constant() (1 + p^k)^alpha.
    PsiSpec rhs() const;
};

GradBarrier make_grad_barrier(double a, const Dim& dim, double alpha, const BarrierGrid& grid = {});

/// Certifies S_k(D^2 u) <= K (1 + |Du|^k)^alpha at every profile node.
CheckReport verify_grad_barrier(const GradBarrier& g, double tol = 1e-8);

/// a* = [(k+1)(n-1)! / (M (alpha-1) k! (n-k-1)!)]^{1/k}.
double threshold_radius(const Dim& dim, double alpha, double M);

struct GlobalSubsolReport {
    double A = 0.0;
    double b = 0.0;
    bool passed = false;
    double min_rel_slack = 0.0; ///< min of LHS/RHS - 1 over the nodes
    double worst_r = 0.0;
    int exponent_gap = 0;       ///< sign of k - (q + gamma)
    bool boundary_case = false; ///< q + gamma == k: decided by the r^{2 - gamma} factor
    bool asymptotic_dominance = false;
};

/// Checks u = A e^{b r^2} against S_k(D^2 u) >= M (1 + u^q)(1 + |Du|^gamma) on [0, r_max].
GlobalSubsolReport global_subsol_check(double A, double b, double M, double q, double gamma, const Dim& dim,
                                       double r_max, int nodes = 2001);

/// Coarse (A, b) search for a passing candidate.
std::optional<GlobalSubsolReport> search_global_subsol(double M, double q, double gamma, const Dim& dim,
                                                       double r_max);

} // namespace khess
