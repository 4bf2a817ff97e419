// verify.hpp
//
// Pointwise certification of S_k(D^2 u) >= psi / <= psi on profile nodes,
// comparison of sub/supersolution pairs, and the two-sided envelope check.
#pragma once

#include <string>

#include "khess/barriers.hpp"
#include "khess/check_report.hpp"
#include "khess/dim.hpp"
#include "khess/psi.hpp"
#include "khess/radial_profile.hpp"

namespace khess {

/// slack_i = S_k(D^2 u)(r_i) - psi(u_i, |u'_i|), relative to 1 + |psi|.
/// Throws PreconditionError when the profile is not k-convex.
CheckReport check_subsolution(const RadialProfile& profile, const PsiSpec& psi, const Dim& dim, double tol = 1e-8);

/// slack_i = phi(u_i, |u'_i|) - S_k(D^2 u)(r_i), relative to 1 + |phi|.
CheckReport check_supersolution(const RadialProfile& profile, const PsiSpec& phi_rhs, const Dim& dim,
                                double tol = 1e-8);

enum class Comparison { Holds, Violated, Inconclusive };

struct ComparisonResult {
    Comparison outcome = Comparison::Inconclusive;
    double min_gap = 0.0;     ///< min (v - u) over shared nodes
    std::string reason;       ///< why the result is inconclusive, if it is
};

/// u <= v + 1e-8 on the nodes of u that lie inside v's grid, given the
/// hypotheses: psi >= phi_rhs on a sampled grid, one of them strictly
/// increasing in z, u a subsolution for psi, v a supersolution for phi_rhs,
/// and u <= v at the outer radius. Unmet hypotheses give Inconclusive.
ComparisonResult comparison_check(const RadialProfile& u, const RadialProfile& v, const PsiSpec& psi,
                                  const PsiSpec& phi_rhs, const Dim& dim, double tol = 1e-8);

const char* to_string(Comparison c);

struct SandwichReport {
    CheckReport lower; ///< u - v(R - d)
    CheckReport upper; ///< h(d) - u
    bool passed = false;
};

/// With d = R - r and R the profile radius, checks v(R - d) - tol <= u <= h(d) + tol
/// at every node with d > 0. Slacks are absolute. The sub-barrier must have a >= R.
SandwichReport sandwich_check(const RadialProfile& u, const SubBarrier& sub, double M, double q, const Dim& dim,
                              double tol = 1e-6, std::optional<double> B = std::nullopt);

/// Same check on raw node arrays (profiles that are not smooth at the center).
SandwichReport sandwich_check(const Eigen::VectorXd& r, const Eigen::VectorXd& u, double R, const SubBarrier& sub,
                              double M, double q, const Dim& dim, double tol = 1e-6,
                              std::optional<double> B = std::nullopt);

} // namespace khess
