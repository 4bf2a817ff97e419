// shooter.cpp
#include "khess/shooter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <thread>

#include "khess/errors.hpp"
#include "khess/ode.hpp"
#include "khess/radialop.hpp"
#include "khess/symcone.hpp"

namespace khess {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using State2 = Eigen::Matrix<double, 2, 1>;

// Right-hand sides with u = c + w. Phase 1 has r as the variable and state
// (w, z); phase 2 has w as the variable and state (r, z).
struct Flux {
    const PsiSpec* psi;
    int n, k;
    double A, c;

    double slope(double r, double z) const
    {
        if (r <= 0.0 || z <= 0.0) return 0.0;
        return std::pow(z / std::pow(r, n - k), 1.0 / k);
    }

    State2 f1(double r, const State2& y) const
    {
        const double up = slope(r, y(1));
        State2 d;
        d(0) = up;
        d(1) = std::pow(r, n - 1) * (*psi)(c + y(0), up) / A;
        return d;
    }

    State2 f2(double w, const State2& y) const
    {
        const double up = slope(y(0), y(1));
        State2 d;
        d(0) = 1.0 / up;
        d(1) = std::pow(y(0), n - 1) * (*psi)(c + w, up) / (A * up);
        return d;
    }

    // u'' from S_k(D^2 u) = psi with q = u'/r.
    double second(double r, double w, double z) const
    {
        if (r <= 0.0) return std::pow((*psi)(c + w, 0.0) / (n * A), 1.0 / k);
        const double up = slope(r, z);
        const double rhs = (*psi)(c + w, up) / A;
        const double q = up / r;
        if (k == 1) return rhs - (n - 1) * q;
        if (q == 0.0) return 0.0;
        return (rhs - (n - k) * std::pow(q, k)) / (k * std::pow(q, k - 1));
    }
};

enum class ShotEnd { Reached, High, Blowup };

class Trajectory {
public:
    Trajectory(const PsiSpec& psi, const Dim& dim, double R, double c, double stop_above, const ShootOptions& opt)
        : flux_{&psi, dim.n, dim.k, a_k_const(dim.n, dim.k), c}, R_(R)
    {
        ode_.rtol = opt.rtol;
        ode_.atol = opt.atol;
        const int n = dim.n, k = dim.k;
        const double A = flux_.A;
        const double psi0 = psi(c, 0.0);
        s_ = std::pow(psi0 / (n * A), 1.0 / k);
        r0_ = 1e-4 * R;
        psi0_ = psi0;

        State2 y;
        y(0) = 0.5 * s_ * r0_ * r0_;
        y(1) = psi0 * std::pow(r0_, n) / (n * A);
        double r = r0_;
        r1_ = {r};
        y1_ = {y};

        auto f1 = [this](double t, const State2& v) { return flux_.f1(t, v); };
        ode_.h_init = r0_;
        DormandPrince<2> dp1(ode_);
        bool switched = false;
        const auto st1 = dp1.advance(f1, r, y, R, [&](double t, const State2& v) {
            r1_.push_back(t);
            y1_.push_back(v);
            const double up = flux_.slope(t, v(1));
            if (c + v(0) > stop_above) {
                end = ShotEnd::High;
                return true;
            }
            if (up >= opt.grad_cap) {
                end = ShotEnd::Blowup;
                blowup_r = t;
                return true;
            }
            if (up >= opt.switch_slope && t < R) {
                switched = true;
                return true;
            }
            return false;
        });
        if (st1 == OdeStatus::Reached) {
            end = ShotEnd::Reached;
            uR = c + y(0);
            return;
        }
        if (st1 == OdeStatus::Underflow || st1 == OdeStatus::StepLimit) {
            end = ShotEnd::Blowup;
            blowup_r = r;
            return;
        }
        if (!switched) return; // High or Blowup already recorded

        // Phase 2: w as the variable.
        double w = y(0);
        State2 x;
        x(0) = r;
        x(1) = y(1);
        w2_ = {w};
        x2_ = {x};
        r2_ = {r};
        const double w_end = std::isfinite(stop_above) ? stop_above - c : 1e300;
        auto f2 = [this](double t, const State2& v) { return flux_.f2(t, v); };
        OdeOptions o2 = ode_;
        o2.h_init = 1e-3 * (1.0 + std::abs(w));
        DormandPrince<2> dp2(o2);
        bool crossed = false;
        const auto st2 = dp2.advance(f2, w, x, w_end, [&](double t, const State2& v) {
            w2_.push_back(t);
            x2_.push_back(v);
            r2_.push_back(v(0));
            if (v(0) >= R) {
                crossed = true;
                return true;
            }
            if (flux_.slope(v(0), v(1)) >= opt.grad_cap) {
                end = ShotEnd::Blowup;
                blowup_r = v(0);
                return true;
            }
            return false;
        });
        if (crossed) {
            end = ShotEnd::Reached;
            uR = c + w_at(R);
            return;
        }
        if (st2 == OdeStatus::Reached) {
            end = ShotEnd::High;
            return;
        }
        if (st2 != OdeStatus::Stopped) {
            end = ShotEnd::Blowup;
            blowup_r = x(0);
        }
    }

    ShotEnd end = ShotEnd::High;
    double uR = kInf;
    double blowup_r = kInf;

    RadialProfile profile(const Eigen::VectorXd& nodes) const
    {
        const Eigen::Index N = nodes.size();
        Eigen::VectorXd u(N), du(N), ddu(N);
        for (Eigen::Index i = 0; i < N; ++i) {
            double w, z;
            state_at(nodes(i), w, z);
            u(i) = flux_.c + w;
            du(i) = flux_.slope(nodes(i), z);
            ddu(i) = flux_.second(nodes(i), w, z);
        }
        return RadialProfile(R_, nodes, u, du, ddu, "solve");
    }

private:
    // w where the phase-2 trajectory passes radius r.
    double w_at(double r) const
    {
        const auto it = std::upper_bound(r2_.begin(), r2_.end(), r);
        std::size_t j = static_cast<std::size_t>(it - r2_.begin());
        if (j == 0) return w2_.front();
        --j;
        if (j + 1 >= r2_.size()) return w2_.back();
        if (r2_[j] == r) return w2_[j];
        const DormandPrince<2> dp(ode_);
        auto f2 = [this](double t, const State2& v) { return flux_.f2(t, v); };
        double lo = 0.0, hi = w2_[j + 1] - w2_[j];
        for (int iter = 0; iter < 200 && hi - lo > 1e-16 * (1.0 + std::abs(w2_[j])); ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (dp.single_step(f2, w2_[j], x2_[j], mid)(0) < r)
                lo = mid;
            else
                hi = mid;
        }
        return w2_[j] + 0.5 * (lo + hi);
    }

    void state_at(double r, double& w, double& z) const
    {
        const int n = flux_.n;
        if (r <= r0_) {
            w = 0.5 * s_ * r * r;
            z = psi0_ * std::pow(r, n) / (n * flux_.A);
            return;
        }
        const DormandPrince<2> dp(ode_);
        if (r <= r1_.back()) {
            const auto it = std::upper_bound(r1_.begin(), r1_.end(), r);
            const std::size_t j = static_cast<std::size_t>(it - r1_.begin()) - 1;
            auto f1 = [this](double t, const State2& v) { return flux_.f1(t, v); };
            const State2 y = r == r1_[j] ? y1_[j] : dp.single_step(f1, r1_[j], y1_[j], r - r1_[j]);
            w = y(0);
            z = y(1);
            return;
        }
        if (r2_.empty()) throw DomainError("trajectory: radius beyond the integrated range");
        w = w_at(r);
        // z from one step of phase 2 to w
        const auto it = std::upper_bound(w2_.begin(), w2_.end(), w);
        const std::size_t j = static_cast<std::size_t>(it - w2_.begin()) - 1;
        auto f2 = [this](double t, const State2& v) { return flux_.f2(t, v); };
        const State2 x = w == w2_[j] ? x2_[j] : dp.single_step(f2, w2_[j], x2_[j], w - w2_[j]);
        z = x(1);
    }

    Flux flux_;
    double R_;
    OdeOptions ode_;
    double s_ = 0.0, r0_ = 0.0, psi0_ = 0.0;
    std::vector<double> r1_;
    std::vector<State2> y1_;
    std::vector<double> w2_, r2_;
    std::vector<State2> x2_;
};

} // namespace

Eigen::VectorXd solve_nodes(double R, const ShootOptions& opt)
{
    if (opt.nodes < 2) throw ParameterError("solve: need at least two nodes");
    std::vector<double> r;
    for (int i = 0; i < opt.nodes; ++i) r.push_back(R * i / (opt.nodes - 1));
    for (int j = 0; j < opt.boundary_nodes; ++j) {
        const double e = opt.boundary_nodes == 1 ? -2.0 : std::log10(0.5) - (10.0 + std::log10(0.5)) * j / (opt.boundary_nodes - 1);
        r.push_back(R - R * std::pow(10.0, e));
    }
    std::sort(r.begin(), r.end());
    // the two families meet at R/2; drop near-duplicates there
    const double gap = 1e-12 * R;
    r.erase(std::unique(r.begin(), r.end(), [gap](double a, double b) { return b - a < gap; }), r.end());
    r.back() = R;
    return Eigen::Map<Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
}

double shoot(const PsiSpec& psi, const Dim& dim, double R, double c, double stop_above, const ShootOptions& opt,
             double* blowup)
{
    dim.require_radial();
    const Trajectory tr(psi, dim, R, c, stop_above, opt);
    if (blowup) *blowup = tr.end == ShotEnd::Blowup ? tr.blowup_r : kInf;
    return tr.end == ShotEnd::Reached ? tr.uR : kInf;
}

SolveReport solve_dirichlet_ball(const PsiSpec& psi, const Dim& dim, double R, double m, double tol,
                                 const ShootOptions& opt)
{
    dim.require_radial();
    if (!(R > 0) || !std::isfinite(R)) throw ParameterError("solve: radius must be positive");
    if (!std::isfinite(m)) throw ParameterError("solve: boundary value must be finite");
    if (!(tol > 0)) throw ParameterError("solve: tol must be positive");
    if (!psi.z_monotone()) throw PreconditionError("solve: psi must be nondecreasing in z");

    SolveReport rep;
    rep.m = m;
    rep.R = R;
    const double stop = m + tol;
    std::unique_ptr<Trajectory> best;
    auto consider = [&](std::unique_ptr<Trajectory> t, double c) {
        if (t->end != ShotEnd::Reached) return;
        if (!best || std::abs(t->uR - m) < std::abs(best->uR - m)) {
            best = std::move(t);
            rep.c = c;
        }
    };
    auto done = [&] { return best && std::abs(best->uR - m) <= tol; };

    double c_hi = m;
    {
        auto t = std::make_unique<Trajectory>(psi, dim, R, c_hi, stop, opt);
        if (t->end == ShotEnd::Blowup && psi.z_independent()) {
            rep.blowup_radius = t->blowup_r;
            rep.message = "gradient blow-up before the boundary";
            return rep;
        }
        consider(std::move(t), c_hi);
    }

    // Lower bracket: geometric expansion below m.
    const double A = a_k_const(dim.n, dim.k);
    double delta = std::max(0.5 * std::pow(psi(m, 0.0) / (dim.n * A), 1.0 / dim.k) * R * R, 1e-3 * (1.0 + std::abs(m)));
    double c_lo = m - delta;
    double last_blowup = kInf;
    bool bracketed = done();
    for (int i = 0; i < 200 && !bracketed; ++i) {
        c_lo = m - delta;
        auto t = std::make_unique<Trajectory>(psi, dim, R, c_lo, stop, opt);
        const bool low = t->end == ShotEnd::Reached && t->uR < m;
        if (t->end == ShotEnd::Blowup) last_blowup = t->blowup_r;
        consider(std::move(t), c_lo);
        if (low || done()) bracketed = true;
        else {
            c_hi = c_lo;
            delta *= 2.0;
        }
    }
    if (!bracketed) {
        if (std::isfinite(last_blowup)) {
            rep.blowup_radius = last_blowup;
            rep.message = "gradient blow-up for every bracket candidate";
            return rep;
        }
        throw NumericalError("solve: could not bracket the center value");
    }

    while (!done() && rep.iterations < opt.max_bisect) {
        const double mid = c_lo + 0.5 * (c_hi - c_lo);
        if (!(mid > c_lo && mid < c_hi)) break;
        ++rep.iterations;
        auto t = std::make_unique<Trajectory>(psi, dim, R, mid, stop, opt);
        const bool low = t->end == ShotEnd::Reached && t->uR < m;
        consider(std::move(t), mid);
        if (low)
            c_lo = mid;
        else
            c_hi = mid;
    }
    if (!best) throw NumericalError("solve: no shot reached the boundary");

    rep.boundary_gap = std::abs(best->uR - m);
    rep.profile = best->profile(solve_nodes(R, opt));
    rep.residual = max_relative_flux_residual(*rep.profile, psi, dim);
    try {
        rep.checks.push_back(check_subsolution(*rep.profile, psi, dim, 1e-8));
        rep.checks.push_back(check_supersolution(*rep.profile, psi, dim, 1e-8));
    } catch (const PreconditionError& e) {
        rep.message = e.what();
    }
    const bool gap_ok = rep.boundary_gap <= tol;
    const bool res_ok = rep.residual <= opt.residual_tol;
    rep.converged = gap_ok && res_ok && rep.message.empty();
    if (!gap_ok)
        rep.message = "boundary gap above tolerance after bisection";
    else if (!res_ok && rep.message.empty())
        rep.message = "flux residual above residual_tol";
    return rep;
}

int worker_count()
{
    if (const char* env = std::getenv("HESS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<int>(std::min(v, 256L));
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

SequenceReport monotone_sequence(const PsiSpec& psi, const Dim& dim, double R, int m_max, double tol,
                                 const ShootOptions& opt)
{
    if (m_max < 1) throw ParameterError("sequence: m_max must be >= 1");
    dim.require_radial();
    std::vector<SolveReport> all(static_cast<std::size_t>(m_max));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < m_max; i = next++) {
            try {
                all[i] = solve_dirichlet_ball(psi, dim, R, i + 1.0, tol, opt);
            } catch (const std::exception& e) {
                all[i] = SolveReport{};
                all[i].m = i + 1.0;
                all[i].R = R;
                all[i].message = e.what();
            }
        }
    };
    const int workers = std::min(worker_count(), m_max);
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    SequenceReport seq;
    for (int i = 0; i < m_max; ++i) {
        if (!all[i].converged || !all[i].profile) {
            seq.failed_m = i + 1;
            break;
        }
        seq.reports.push_back(std::move(all[i]));
    }

    CheckReport& mono = seq.monotone;
    mono.name = "monotone";
    mono.tol = 1e-8;
    mono.min_slack = kInf;
    for (std::size_t i = 0; i + 1 < seq.reports.size(); ++i) {
        const Eigen::VectorXd& a = seq.reports[i].profile->u();
        const Eigen::VectorXd& b = seq.reports[i + 1].profile->u();
        for (Eigen::Index j = 0; j < a.size(); ++j) {
            ++mono.node_count;
            if (b(j) - a(j) < mono.min_slack) {
                mono.min_slack = b(j) - a(j);
                mono.worst_node = j;
            }
        }
    }
    if (mono.node_count == 0) mono.min_slack = 0.0;
    mono.min_rel_slack = mono.min_slack;
    mono.passed = mono.min_slack >= -mono.tol;
    return seq;
}

const char* to_string(Verdict v) { return v == Verdict::Exists ? "exists" : "diverges"; }

double sub_barrier_radius(const PhiSolution& ivp, double R, double m)
{
    const double T = ivp.blowup_time();
    const int k = ivp.dim().k;
    auto v = [&](double a) {
        const double s = T * R / a;
        if (!(s < T)) return kInf;
        return ivp.value(s) - 2.0 * k * std::max(0.0, std::log(a / T));
    };
    double lo = R, hi = 2.0 * R;
    for (int i = 0; i < 2000 && v(hi) > m; ++i) {
        lo = hi;
        hi *= 2.0;
    }
    if (v(hi) > m) throw NumericalError("sub-barrier radius: no bracket");
    for (int i = 0; i < 2000; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        if (v(mid) > m)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

namespace {

// Sub-barrier v^{a} sampled at the given radii (all < a), derivatives from the IVP.
RadialProfile sub_profile_at(const SubBarrier& sb, const Eigen::VectorXd& r)
{
    const double sc = sb.T / sb.a;
    Eigen::VectorXd u(r.size()), du(r.size()), ddu(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double s = sc * r(i);
        const double phi = sb.ivp->value(s);
        u(i) = phi - sb.shift;
        du(i) = sc * sb.ivp->slope(s, phi);
        ddu(i) = sc * sc * sb.ivp->curvature(s, phi);
    }
    return RadialProfile(sb.a, r, u, du, ddu, "barrier:sub");
}

} // namespace

LimitReport blowup_limit(const PsiSpec& psi, const Dim& dim, double R, double tol, const LimitOptions& opt)
{
    dim.require_radial();
    if (!(tol > 0)) throw ParameterError("limit: tol must be positive");
    if (!(opt.compact > 0 && opt.compact < 1)) throw ParameterError("limit: compact fraction must lie in (0, 1)");

    LimitReport rep;
    rep.sequence = monotone_sequence(psi, dim, R, opt.m_max, opt.solve_tol, opt.shoot);
    const auto& reps = rep.sequence.reports;
    for (const auto& s : reps) rep.centers.push_back(s.c);
    if (!reps.empty()) rep.limit = reps.back().profile;

    const Eigen::VectorXd& r = reps.empty() ? Eigen::VectorXd() : reps.front().profile->r();
    for (std::size_t i = 0; i + 1 < reps.size(); ++i) {
        double inc = 0.0;
        for (Eigen::Index j = 0; j < r.size() && r(j) <= opt.compact * R; ++j)
            inc = std::max(inc, std::abs(reps[i + 1].profile->u()(j) - reps[i].profile->u()(j)));
        rep.increments.push_back(inc);
    }
    for (std::size_t i = 2; i < rep.increments.size(); ++i) {
        const auto& d = rep.increments;
        if (d[i] <= tol && d[i - 2] >= d[i - 1] && d[i - 1] >= d[i]) {
            rep.converged_at = static_cast<int>(i) + 2;
            break;
        }
    }
    rep.verdict = rep.converged_at && !rep.sequence.failed_m ? Verdict::Exists : Verdict::Diverges;

    const auto [M, q] = psi.power_lower_bound(dim.k);
    if (M > 0 && !reps.empty()) {
        rep.M = M;
        rep.q = q;
        rep.B = super_const_B(dim, q);
        rep.hbar_R = hbar(R, M, q, dim, *rep.B);

        const GrowthBound g = GrowthBound::from_psi(psi, dim.k);
        const EtaSpec eta = g.decays_at_minus_infinity(1.0) ? eta_from_phi(g) : eta_from_phi(g, opt.z_floor);
        rep.eta = eta;
        const auto ivp = solve_phi_ivp(dim, eta);
        for (const auto& s : reps) {
            const double a = sub_barrier_radius(*ivp, R, s.m);
            rep.a_m.push_back(a);
            const SubBarrier sb = make_sub_barrier(a, ivp, BarrierGrid{2, 0.5});
            const Eigen::VectorXd rr = s.profile->r().head(s.profile->size() - 1);
            CheckReport cert = check_subsolution(sub_profile_at(sb, rr), psi, dim, 1e-8);
            cert.name = "lower barrier";
            rep.lower_certificates.push_back(cert);
            rep.sandwich.push_back(sandwich_check(*s.profile, sb, M, q, dim, opt.sandwich_tol, rep.B));
        }
    }
    return rep;
}

RateFit rate_fit(const Eigen::VectorXd& r, const Eigen::VectorXd& u, double R, double M, double q, const Dim& dim,
                 std::optional<double> B)
{
    if (r.size() != u.size()) throw ParameterError("rate fit: column lengths differ");
    const double Bv = B ? *B : super_const_B(dim, q);
    double dmin = kInf;
    for (Eigen::Index i = 0; i < r.size(); ++i)
        if (R - r(i) > 0) dmin = std::min(dmin, R - r(i));
    if (!std::isfinite(dmin)) throw NumericalError("rate fit: no nodes inside the ball");

    RateFit fit;
    fit.envelope_ratio_max = 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double d = R - r(i);
        if (!(d > 0)) continue;
        fit.envelope_ratio_max = std::max(fit.envelope_ratio_max, u(i) / hbar(d, M, q, dim, Bv));
        if (d > 10.0 * dmin * (1.0 + 1e-12)) continue;
        if (!(u(i) > 0)) throw NumericalError("rate fit: nonpositive value near the boundary");
        const double x = std::log(d), y = std::log(u(i));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++fit.points;
    }
    if (fit.points < 3) throw NumericalError("rate fit: fewer than three nodes in the last decade");
    const double N = fit.points;
    const double den = N * sxx - sx * sx;
    if (!(std::abs(den) > 0)) throw NumericalError("rate fit: degenerate abscissae");
    fit.exponent = (N * sxy - sx * sy) / den;
    return fit;
}

RateFit rate_fit(const RadialProfile& profile, double M, double q, const Dim& dim, std::optional<double> B)
{
    return rate_fit(profile.r(), profile.u(), profile.radius(), M, q, dim, B);
}

ShootingRadius max_shooting_radius(const PsiSpec& psi, const Dim& dim, double c, double cap, const ShootOptions& opt)
{
    dim.require_radial();
    const int n = dim.n, k = dim.k;
    const PFactor& pf = psi.pfactor();
    if (!psi.z_independent() || pf.gamma != k || !(pf.sigma > 1))
        throw PreconditionError("shooting radius: psi must be M (1 + p^k)^alpha with alpha > 1");
    if (!(cap > 0)) throw ParameterError("shooting radius: cap must be positive");
    const double M = psi.M() * psi.zfactor()(0.0);
    const double alpha = pf.sigma;

    ShootingRadius out;
    out.threshold = threshold_radius(dim, alpha, M);
    out.limit = 10.0 * out.threshold;

    const Flux flux{&psi, n, k, a_k_const(n, k), c};
    OdeOptions ode;
    ode.rtol = opt.rtol;
    ode.atol = opt.atol;
    const double r0 = 1e-6 * out.limit;
    ode.h_init = r0;
    const double psi0 = psi(c, 0.0);
    State2 y;
    y(0) = 0.5 * std::pow(psi0 / (n * flux.A), 1.0 / k) * r0 * r0;
    y(1) = psi0 * std::pow(r0, n) / (n * flux.A);
    double r = r0, r_prev = r0;
    State2 y_prev = y;
    auto f1 = [&flux](double t, const State2& v) { return flux.f1(t, v); };
    DormandPrince<2> dp(ode);
    const auto st = dp.advance(f1, r, y, out.limit, [&](double t, const State2& v) {
        if (flux.slope(t, v(1)) >= cap) return true;
        r_prev = t;
        y_prev = v;
        return false;
    });
    if (st == OdeStatus::Reached) {
        out.radius = kInf;
        return out;
    }
    if (st == OdeStatus::Stopped) {
        // Crossing of u' = cap inside the last step.
        double lo = 0.0, hi = r - r_prev;
        for (int i = 0; i < 200 && hi - lo > 1e-16 * r; ++i) {
            const double mid = 0.5 * (lo + hi);
            const State2 v = dp.single_step(f1, r_prev, y_prev, mid);
            if (v.allFinite() && flux.slope(r_prev + mid, v(1)) < cap)
                lo = mid;
            else
                hi = mid;
        }
        out.radius = r_prev + 0.5 * (lo + hi);
    } else {
        out.radius = r;
    }
    out.finite = true;
    return out;
}

std::pair<double, double> ScalingMode::constants(double lam, const Dim& dim) const
{
    if (!(lam > 0 && lam <= 1)) throw ParameterError("scaling: lambda must lie in (0, 1]");
    if (kind == Power) {
        if (!(param > dim.k)) throw ParameterError("scaling: power mode needs q > k");
        return {2.0 * dim.k / (param - dim.k), 0.0};
    }
    if (!(param > 0)) throw ParameterError("scaling: exp mode needs eps > 0");
    return {0.0, -(2.0 * dim.k / param) * std::log(lam)};
}

RadialProfile scaling_transform(const RadialProfile& profile, double lam, const ScalingMode& mode, const Dim& dim)
{
    const auto [alpha, a] = mode.constants(lam, dim);
    const Eigen::Index N = profile.size();
    Eigen::VectorXd u(N), du(N), ddu(N);
    const double s0 = std::pow(lam, alpha), s1 = s0 * lam, s2 = s1 * lam;
    for (Eigen::Index i = 0; i < N; ++i) {
        u(i) = s0 * profile.u()(i) - a;
        du(i) = s1 * profile.du()(i);
        ddu(i) = s2 * profile.second(i);
    }
    return RadialProfile(profile.radius() / lam, profile.r() / lam, u, du, ddu, "transform");
}

RadialProfile scaling_transform(const RadialProfile& profile, double lam, const ScalingMode& mode, const Dim& dim,
                                const Eigen::VectorXd& rho)
{
    const auto [alpha, a] = mode.constants(lam, dim);
    const double last = profile.r()(profile.size() - 1);
    const Eigen::Index N = rho.size();
    Eigen::VectorXd u(N), du(N), ddu(N);
    const double s0 = std::pow(lam, alpha), s1 = s0 * lam, s2 = s1 * lam;
    for (Eigen::Index i = 0; i < N; ++i) {
        const double x = lam * rho(i);
        if (!(x >= 0.0) || x > last)
            throw DomainError("scaling: node " + format_double(rho(i)) + " maps outside the input grid");
        u(i) = s0 * profile.value(x) - a;
        du(i) = s1 * profile.slope(x);
        ddu(i) = s2 * profile.curvature(x);
    }
    return RadialProfile(profile.radius() / lam, rho, u, du, ddu, "transform");
}

} // namespace khess
