// acceptance.cpp
#include "khess/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "khess/barriers.hpp"
#include "khess/radialop.hpp"
#include "khess/shooter.hpp"
#include "khess/symcone.hpp"
#include "khess/verify.hpp"

namespace khess {

namespace {

using Rng = std::mt19937_64;

// Sum over k-subsets of the product, by bitmask.
long long subset_sum(const Eigen::Matrix<long long, Eigen::Dynamic, 1>& v, int k)
{
    const int n = static_cast<int>(v.size());
    long long total = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        long long p = 1;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) p *= v(i);
        total += p;
    }
    return total;
}

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
};

Outcome c1_symmetric(Rng& rng)
{
    Outcome o;
    std::uniform_int_distribution<int> dn(1, 8), dv(-9, 9);
    int mismatches = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = dn(rng);
        Eigen::Matrix<long long, Eigen::Dynamic, 1> v(n);
        for (int i = 0; i < n; ++i) v(i) = dv(rng);
        const auto e = elementary_symmetric_all(v, n);
        for (int k = 1; k <= n; ++k)
            if (e(k) != subset_sum(v, k)) ++mismatches;
    }
    o.ok = mismatches == 0;
    o.detail << "1000 integer vectors, mismatches " << mismatches;
    return o;
}

Outcome c2_radial(Rng& rng)
{
    Outcome o;
    std::uniform_int_distribution<int> dn(2, 8);
    std::uniform_real_distribution<double> du(-3, 3), dr(0.01, 5);
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const int n = dn(rng);
        const int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
        const Dim dim{n, k};
        const double up = du(rng), upp = du(rng), r = dr(rng);
        const double a = sk_radial(up, upp, r, dim);
        const Eigen::VectorXd lam = radial_eigs(up, upp, r, n);
        const double b = s_k(lam, k);
        const double scale = std::max(1.0, binomial(n, k) * std::pow(lam.cwiseAbs().maxCoeff(), k));
        worst = std::max(worst, std::abs(a - b) / scale);
    }
    int exact_fail = 0;
    for (int n = 2; n <= 8; ++n)
        for (int k = 1; k <= n - 1; ++k)
            for (double r : {0.0, 0.25, 1.0, 3.5})
                if (sk_radial(r, 1.0, r, Dim{n, k}) != binomial(n, k)) ++exact_fail;
    o.ok = worst <= 1e-10 && exact_fail == 0;
    o.detail << "max rel diff " << worst << ", r^2/2 exact failures " << exact_fail;
    return o;
}

Outcome c3_maclaurin(Rng& rng)
{
    Outcome o;
    std::uniform_real_distribution<double> du(-1, 1), ds(0, 2), dp(0.01, 1);
    double worst_m = 0.0, worst_s = 0.0;
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= n - 1; ++k) {
            int got = 0;
            while (got < 10000) {
                Eigen::VectorXd l(n);
                const double shift = ds(rng);
                for (int i = 0; i < n; ++i) l(i) = du(rng) + shift;
                if (!in_gamma_k(l, k + 1)) continue;
                l /= l.cwiseAbs().maxCoeff();
                worst_m = std::min(worst_m, maclaurin_gap(l, k));
                ++got;
            }
        }
        for (int t = 0; t < 10000; ++t) {
            Eigen::VectorXd l(n);
            for (int i = 0; i < n; ++i) l(i) = dp(rng);
            l /= l.maxCoeff();
            for (int k = 1; k <= n; ++k) worst_s = std::min(worst_s, sn_to_sk_bound(l, k));
        }
    }
    o.ok = worst_m >= -1e-12 && worst_s >= -1e-12;
    o.detail << "min maclaurin gap " << worst_m << ", min S_n->S_k gap " << worst_s;
    return o;
}

Outcome c4_constant(Rng& rng)
{
    Outcome o;
    std::uniform_int_distribution<int> dn(2, 6);
    std::uniform_real_distribution<double> dM(0.5, 5), dR(0.5, 2), dm(-2, 5);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int n = dn(rng);
        const int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
        const double M = dM(rng), R = dR(rng), m = dm(rng);
        const Dim dim{n, k};
        const SolveReport rep = solve_dirichlet_ball(PsiSpec::constant(M), dim, R, m);
        if (!rep.converged || !rep.profile) {
            o.ok = false;
            o.detail << "no convergence for n=" << n << " k=" << k << " M=" << M << " R=" << R << " m=" << m
                     << " gap=" << rep.boundary_gap << " (" << rep.message << "); ";
            continue;
        }
        const double s = std::pow(M / (n * a_k_const(n, k)), 1.0 / k);
        const RadialProfile& p = *rep.profile;
        for (Eigen::Index i = 0; i < p.size(); ++i)
            worst = std::max(worst, std::abs(p.u()(i) - (m - 0.5 * s * (R * R - p.r()(i) * p.r()(i)))));
    }
    o.ok = o.ok && worst <= 1e-6;
    o.detail << "20 tuples, sup-norm error " << worst;
    return o;
}

Outcome c5_sub()
{
    Outcome o;
    double worst = 1e300, worst_t = 1e300;
    for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 2}})
        for (const EtaSpec& eta : {EtaSpec::constant(1.0), EtaSpec::exp(1.0, 1.0)}) {
            const Dim dim{n, k};
            const SubBarrier sb = make_sub_barrier(1.0, dim, eta);
            const CheckReport rep = verify_sub_barrier(sb);
            const double room = phi_time_bound(dim, eta) + 1e-6 - sb.T;
            worst = std::min(worst, rep.min_rel_slack);
            worst_t = std::min(worst_t, room);
            if (!rep.passed || rep.node_count < 1000 || room < 0) o.ok = false;
        }
    o.detail << "min rel slack " << worst << ", min time-bound room " << worst_t;
    return o;
}

Outcome c6_super(bool corrupt)
{
    Outcome o;
    double worst = 1e300, slope_err = 0.0;
    for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}, {5, 3}})
        for (double q : {k + 1.0, k + 2.0, 2.0 * k + 1.0}) {
            const Dim dim{n, k};
            double B = super_const_B(dim, q);
            if (corrupt) B *= 0.5;
            const SuperBarrier sb = make_super_barrier(1.0, 1.0, q, dim, BarrierGrid{}, B);
            const CheckReport rep = verify_super_barrier(sb);
            worst = std::min(worst, rep.min_rel_slack);
            if (!rep.passed) o.ok = false;
            const double r1 = 0.3, r2 = 2.7;
            const double slope = (std::log(hbar(r2, 1.0, q, dim, B)) - std::log(hbar(r1, 1.0, q, dim, B))) /
                                 (std::log(r2) - std::log(r1));
            slope_err = std::max(slope_err, std::abs(slope + 2.0 * k / (q - k)));
        }
    if (slope_err > 1e-8) o.ok = false;
    o.detail << "min rel slack " << worst << ", envelope slope error " << slope_err;
    return o;
}

Outcome c7_grad()
{
    Outcome o;
    double res = 0.0, min_d2 = 1e300, d20 = 0.0, closed = 0.0, slack = 1e300;
    struct Case {
        int n, k;
        double alpha;
    };
    for (const Case& c : {Case{3, 1, 2.0}, Case{2, 1, 1.5}, Case{3, 2, 2.0}, Case{4, 2, 3.0}, Case{4, 3, 2.5}}) {
        const Dim dim{c.n, c.k};
        const GradBarrier g = make_grad_barrier(1.0, dim, c.alpha);
        const RadialProfile& ph = g.phi_hat;
        for (Eigen::Index i = 0; i < ph.size(); ++i) {
            res = std::max(res, grad_identity_residual(ph.r()(i), c.k, c.alpha));
            min_d2 = std::min(min_d2, ph.second(i));
        }
        d20 = std::max(d20, std::abs(grad_phi_d2(0.0, c.k, c.alpha) - std::pow(g.beta, 1.0 / c.k)));
        if (c.k == 1 && c.alpha == 2.0)
            for (Eigen::Index i = 0; i < ph.size(); ++i) {
                const double r = ph.r()(i);
                closed = std::max(closed, std::abs(ph.u()(i) + 0.5 * std::log1p(-r * r)));
            }
        const CheckReport rep = verify_grad_barrier(g);
        slack = std::min(slack, rep.min_rel_slack);
        if (!rep.passed || ph.size() < 1000) o.ok = false;
    }
    o.ok = o.ok && res <= 1e-10 && min_d2 > 0 && d20 <= 1e-6 && closed <= 1e-8;
    o.detail << "identity residual " << res << ", min phi'' " << min_d2 << ", phi''(0) error " << d20
             << ", closed-form error " << closed << ", min rel slack " << slack;
    return o;
}

Outcome c8_existence()
{
    Outcome o;
    const Dim dim{3, 2};
    const PsiSpec psi = PsiSpec::exist_product(1.0, 1.0, 1.0, 3.0, 2);
    const LimitReport L = blowup_limit(psi, dim, 1.0, 1e-6);
    const auto& seq = L.sequence;
    bool shrinking = true;
    for (std::size_t i = 1; i < L.increments.size(); ++i)
        if (L.increments[i] > L.increments[i - 1]) shrinking = false;
    double lower = 1e300, upper = 1e300, cert = 1e300;
    bool sandwich = L.sandwich.size() == 20, certs = L.lower_certificates.size() == 20;
    for (const auto& s : L.sandwich) {
        sandwich = sandwich && s.passed;
        lower = std::min(lower, s.lower.min_slack);
        upper = std::min(upper, s.upper.min_slack);
    }
    for (const auto& c : L.lower_certificates) {
        certs = certs && c.passed;
        cert = std::min(cert, c.min_rel_slack);
    }
    bool bounded = L.hbar_R.has_value();
    double top = -1e300;
    for (double c : L.centers) top = std::max(top, c);
    if (bounded) bounded = top <= *L.hbar_R + 1e-6;
    o.ok = seq.reports.size() == 20 && !seq.failed_m && seq.monotone.passed && shrinking && sandwich && certs &&
           bounded && L.verdict == Verdict::Exists;
    o.detail << "m=1.." << seq.reports.size() << ", monotone slack " << seq.monotone.min_slack << ", last increment "
             << (L.increments.empty() ? 0.0 : L.increments.back()) << ", sandwich slacks " << lower << " / " << upper
             << ", lower-barrier rel slack " << cert << ", sup u_m(0) " << top << " vs h(R) "
             << (L.hbar_R ? *L.hbar_R : 0.0) << ", verdict " << to_string(L.verdict);
    return o;
}

Outcome c9_nonexistence()
{
    Outcome o;
    const double M = 2.0, R = 1.0;
    const Dim dim{3, 2};
    LimitOptions lo;
    lo.m_max = 10;
    const LimitReport L = blowup_limit(PsiSpec::constant(M), dim, R, 1e-6, lo);
    const double s = std::pow(M / (dim.n * a_k_const(dim.n, dim.k)), 1.0 / dim.k);
    double err = 0.0;
    for (std::size_t i = 0; i < L.centers.size(); ++i)
        err = std::max(err, std::abs(L.centers[i] - ((i + 1.0) - 0.5 * s * R * R)));
    o.ok = L.centers.size() == 10 && err <= 1e-6 && L.verdict == Verdict::Diverges;
    o.detail << "u_m(0) affine error " << err << ", verdict " << to_string(L.verdict);
    return o;
}

Outcome c10_threshold()
{
    Outcome o;
    // substitution into [(k+1)(n-1)! / (M (alpha-1) k! (n-k-1)!)]^{1/k}
    struct Case {
        int n, k;
        double alpha, M, expect;
    };
    double terr = 0.0;
    for (const Case& c : {Case{2, 1, 2, 1, 2.0}, Case{3, 1, 2, 1, 4.0}, Case{3, 2, 3, 1, std::sqrt(1.5)},
                          Case{4, 2, 2, 2, std::sqrt(4.5)}})
        terr = std::max(terr, std::abs(threshold_radius(Dim{c.n, c.k}, c.alpha, c.M) - c.expect));
    double spread = 0.0;
    bool finite = true;
    for (double alpha : {1.5, 2.0, 3.0}) {
        const PsiSpec psi = PsiSpec::grad_power(1.0, alpha, 1);
        const Dim dim{2, 1};
        double lo = 1e300, hi = -1e300;
        for (double c : {0.0, 1.7, -3.0}) {
            const ShootingRadius sr = max_shooting_radius(psi, dim, c);
            finite = finite && sr.finite;
            lo = std::min(lo, sr.radius);
            hi = std::max(hi, sr.radius);
        }
        spread = std::max(spread, hi - lo);
    }
    o.ok = terr <= 1e-12 && finite && spread <= 1e-10;
    o.detail << "threshold error " << terr << ", r* spread over c " << spread;
    return o;
}

Outcome c11_scaling()
{
    Outcome o;
    const Dim dim{3, 2};
    const int k = dim.k;
    const double q = 3.0, M = 1.0;
    const double alpha = 2.0 * k / (q - k);
    const std::vector<double> lams{0.5, 0.9, 0.99};
    double worst = 1e300;
    auto check_all = [&](const RadialProfile& u, const ScalingMode& mode, const PsiSpec& psi, const char* tag) {
        const CheckReport in = check_subsolution(u, psi, dim);
        if (!in.passed) {
            o.ok = false;
            o.detail << tag << ": input not certified; ";
        }
        for (double lam : lams) {
            const CheckReport out = check_subsolution(scaling_transform(u, lam, mode, dim), psi, dim);
            worst = std::min(worst, out.min_rel_slack);
            if (!out.passed) {
                o.ok = false;
                o.detail << tag << " fails at lambda=" << lam << "; ";
            }
        }
    };

    // Homogeneous psi: the exact solution is a zero-slack subsolution.
    const PsiSpec psi0 = PsiSpec::power(M, q, k, 0.5);
    const SolveReport s0 = solve_dirichlet_ball(psi0, dim, 1.0, 1.0);
    check_all(*s0.profile, ScalingMode::power(q), psi0, "homogeneous");

    // M (1 + (z^+)^q)(1 + p^k)^{1/2}: a solution for K psi with K = lam_min^{-alpha q}.
    const PsiSpec psi = PsiSpec::growth(M, q, k, 0.5);
    const double K = std::pow(lams.front(), -alpha * q);
    const SolveReport s1 = solve_dirichlet_ball(psi.scaled(K), dim, 1.0, 1.0);
    check_all(*s1.profile, ScalingMode::power(q), psi, "growth");

    // Negative control: the zero-slack solution for psi itself does not survive lam = 0.5.
    const SolveReport s2 = solve_dirichlet_ball(psi, dim, 1.0, 1.0);
    const CheckReport neg = check_subsolution(scaling_transform(*s2.profile, 0.5, ScalingMode::power(q), dim), psi, dim);
    if (neg.passed) {
        o.ok = false;
        o.detail << "negative control passed unexpectedly; ";
    }

    // e^z (1 + p^k), eps = 1: the sub-barrier with eta = 1.
    const SubBarrier sb = make_sub_barrier(1.0, dim, EtaSpec::constant(1.0));
    check_all(sb.profile, ScalingMode::exp(1.0), PsiSpec::exp_grad(1.0, 1.0, k), "exp");

    o.detail << "min rel slack after transform " << worst << ", control slack " << neg.min_rel_slack;
    return o;
}

} // namespace

std::vector<AcceptanceLine> run_acceptance(const AcceptanceOptions& opt)
{
    struct Item {
        int id;
        const char* name;
        double budget;
        std::function<Outcome(Rng&)> run;
    };
    const std::vector<Item> items{
        {1, "symmetric functions vs subset enumeration", 1.0, c1_symmetric},
        {2, "radial operator equivalence", 1.0, c2_radial},
        {3, "Maclaurin and S_n-to-S_k bounds", 5.0, c3_maclaurin},
        {4, "constant-psi exact solve", 5.0, c4_constant},
        {5, "sub-barrier certificate", 10.0, [](Rng&) { return c5_sub(); }},
        {6, "super-barrier certificate", 5.0, [&](Rng&) { return c6_super(opt.corrupt_B); }},
        {7, "gradient barrier suite", 5.0, [](Rng&) { return c7_grad(); }},
        {8, "existence pipeline", 60.0, [](Rng&) { return c8_existence(); }},
        {9, "non-existence probe", 5.0, [](Rng&) { return c9_nonexistence(); }},
        {10, "threshold and gradient blow-up", 10.0, [](Rng&) { return c10_threshold(); }},
        {11, "scaling transform", 10.0, [](Rng&) { return c11_scaling(); }},
    };

    std::vector<AcceptanceLine> out;
    for (const Item& it : items) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), it.id) == opt.only.end()) continue;
        Rng rng(opt.seed + static_cast<std::uint64_t>(it.id));
        AcceptanceLine line;
        line.id = it.id;
        line.name = it.name;
        line.budget = it.budget;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = it.run(rng);
            line.check = o.ok;
            line.detail = o.detail.str();
        } catch (const std::exception& e) {
            line.check = false;
            line.detail = std::string("exception: ") + e.what();
        }
        line.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(line));
    }
    return out;
}

bool print_acceptance(std::ostream& os, const std::vector<AcceptanceLine>& lines)
{
    bool all = true;
    for (const AcceptanceLine& l : lines) {
        all = all && l.passed();
        os << (l.passed() ? "PASS" : "FAIL") << "  " << std::setw(2) << l.id << "  " << l.name << "  ["
           << std::fixed << std::setprecision(2) << l.seconds << " s / " << l.budget << " s]"
           << std::defaultfloat << std::setprecision(6) << "  " << l.detail;
        if (l.check && !l.passed()) os << "  (over time budget)";
        os << '\n';
    }
    return all;
}

} // namespace khess
