// shooter.hpp
//
// Radial Dirichlet problems S_k(D^2 u) = psi(u, |Du|) in B_R, u = m on the
// boundary, solved by shooting on the flux form
//
//     z = r^{n-k} (u')^k,   z' = r^{n-1} psi(u, u') / A_k,
//
// and the monotone sequence m = 1, 2, ... that approximates the blow-up
// solution. Also the gradient blow-up radius for z-independent psi and the
// rescaling u -> lam^alpha u(lam x) - a.
#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "khess/barriers.hpp"
#include "khess/check_report.hpp"
#include "khess/dim.hpp"
#include "khess/psi.hpp"
#include "khess/radial_profile.hpp"
#include "khess/verify.hpp"

namespace khess {

struct ShootOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double grad_cap = 1e12;     ///< u' above this counts as gradient blow-up
    double switch_slope = 1.0;  ///< u' at which u replaces r as the variable
    int max_bisect = 400;
    int nodes = 401;            ///< uniform nodes on [0, R]
    int boundary_nodes = 600;   ///< extra nodes at R - d, d log-spaced in [1e-10 R, R/2]
    double residual_tol = 1e-2; ///< bound on the relative flux residual (a discretisation diagnostic)
};

struct SolveReport {
    bool converged = false;
    double c = 0.0;           ///< u(0)
    int iterations = 0;       ///< bisection steps
    double m = 0.0;
    double R = 0.0;
    std::optional<RadialProfile> profile;
    double residual = 0.0;    ///< max relative flux residual (interior nodes)
    double boundary_gap = 0.0;
    std::optional<double> blowup_radius;
    std::vector<CheckReport> checks;
    std::string message;
};

/// Node layout used by every solve with these options.
Eigen::VectorXd solve_nodes(double R, const ShootOptions& opt);

/// u(R) for the shot u(0) = c; +inf if u exceeds `stop_above` or the gradient
/// blows up first (the blow-up radius is written to *blowup when given).
double shoot(const PsiSpec& psi, const Dim& dim, double R, double c, double stop_above,
             const ShootOptions& opt = {}, double* blowup = nullptr);

/// Bisection on c until |u(R) - m| <= tol. psi must be nondecreasing in z.
SolveReport solve_dirichlet_ball(const PsiSpec& psi, const Dim& dim, double R, double m, double tol = 1e-9,
                                 const ShootOptions& opt = {});

struct SequenceReport {
    std::vector<SolveReport> reports;   ///< m = 1..m_max, truncated at the first failure
    std::optional<int> failed_m;
    CheckReport monotone;               ///< min over pairs of u_{m+1} - u_m
};

/// Worker count: HESS_THREADS when set, else hardware concurrency.
int worker_count();

SequenceReport monotone_sequence(const PsiSpec& psi, const Dim& dim, double R, int m_max, double tol = 1e-9,
                                 const ShootOptions& opt = {});

enum class Verdict { Exists, Diverges };
const char* to_string(Verdict v);

struct LimitOptions {
    int m_max = 20;
    double compact = 0.9;       ///< increments measured on r <= compact * R
    double z_floor = 0.0;       ///< floor for the growth-bound eta
    double sandwich_tol = 1e-6;
    double solve_tol = 1e-7;    ///< boundary gap; the floor is about ulp(c) u'(R)
    ShootOptions shoot;
};

struct LimitReport {
    Verdict verdict = Verdict::Diverges;
    SequenceReport sequence;
    std::vector<double> centers;     ///< u_m(0)
    std::vector<double> increments;  ///< sup_{r <= compact R} |u_{m+1} - u_m|
    std::optional<int> converged_at; ///< m at which the increment criterion held
    std::optional<RadialProfile> limit;

    // Envelope data; present when psi >= M (z^+)^q with q > k.
    std::optional<double> M, q, B;
    std::optional<double> hbar_R;
    std::optional<EtaSpec> eta;
    std::vector<double> a_m;
    std::vector<CheckReport> lower_certificates; ///< v^{a_m} against psi
    std::vector<SandwichReport> sandwich;
};

/// Runs the sequence, measures increments, and checks both envelopes.
LimitReport blowup_limit(const PsiSpec& psi, const Dim& dim, double R, double tol = 1e-6,
                         const LimitOptions& opt = {});

/// a > R with v^{a}(R) <= m as close to m as double precision allows.
double sub_barrier_radius(const PhiSolution& ivp, double R, double m);

struct RateFit {
    double exponent = 0.0;       ///< slope of ln u against ln d over the last decade of d
    double envelope_ratio_max = 0.0;
    int points = 0;
};

RateFit rate_fit(const Eigen::VectorXd& r, const Eigen::VectorXd& u, double R, double M, double q, const Dim& dim,
                 std::optional<double> B = std::nullopt);
RateFit rate_fit(const RadialProfile& profile, double M, double q, const Dim& dim,
                 std::optional<double> B = std::nullopt);

struct ShootingRadius {
    double radius = 0.0; ///< +inf when no blow-up before the limit
    bool finite = false;
    double limit = 0.0;  ///< 10 a*
    double threshold = 0.0;
};

/// First radius at which u' reaches cap for psi = M (1 + p^k)^alpha, u(0) = c.
ShootingRadius max_shooting_radius(const PsiSpec& psi, const Dim& dim, double c, double cap = 1e8,
                                   const ShootOptions& opt = {});

struct ScalingMode {
    enum Kind { Power, Exp } kind = Power;
    double param = 0.0; ///< q for Power, eps for Exp

    static ScalingMode power(double q) { return {Power, q}; }
    static ScalingMode exp(double eps) { return {Exp, eps}; }

    /// {alpha, a}: alpha = 2k/(q-k), a = 0, or alpha = 0, a = -(2k/eps) ln lam.
    std::pair<double, double> constants(double lam, const Dim& dim) const;
};

/// u_lam(rho) = lam^alpha u(lam rho) - a at rho_j = r_j / lam.
RadialProfile scaling_transform(const RadialProfile& profile, double lam, const ScalingMode& mode, const Dim& dim);
/// Same at explicit nodes rho (lam rho must lie inside the input grid).
RadialProfile scaling_transform(const RadialProfile& profile, double lam, const ScalingMode& mode, const Dim& dim,
                                const Eigen::VectorXd& rho);

} // namespace khess
