// barriers.cpp
#include "khess/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "khess/errors.hpp"
#include "khess/quadrature.hpp"
#include "khess/radialop.hpp"
#include "khess/symcone.hpp"
#include "khess/verify.hpp"

namespace khess {

// ---------------------------------------------------------------------------
// eta and growth bounds

EtaSpec EtaSpec::constant(double eta0)
{
    if (!(eta0 > 0) || !std::isfinite(eta0)) throw ParameterError("eta: constant must be positive");
    return EtaSpec{eta0, 0.0};
}

EtaSpec EtaSpec::exp(double c, double s)
{
    if (!(c > 0) || !std::isfinite(c)) throw ParameterError("eta: c must be positive");
    if (!(s >= 0) || !std::isfinite(s)) throw ParameterError("eta: s must be nonnegative");
    return EtaSpec{c, s};
}

double EtaSpec::operator()(double z) const { return s == 0.0 ? c : c * std::exp(s * z); }
double EtaSpec::deriv(double z) const { return s == 0.0 ? 0.0 : c * s * std::exp(s * z); }

std::string EtaSpec::describe() const
{
    std::ostringstream os;
    if (is_constant())
        os << "eta=" << format_double(c);
    else
        os << "eta=" << format_double(c) << "*exp(" << format_double(s) << "*z)";
    return os.str();
}

GrowthBound GrowthBound::constant(double c)
{
    if (!(c > 0)) throw ParameterError("growth bound: constant must be positive");
    return GrowthBound{c, 0.0, 0.0, 0.0, 0.0};
}

GrowthBound GrowthBound::exp(double c, double s)
{
    if (!(c > 0) || !(s >= 0)) throw ParameterError("growth bound: need c > 0 and s >= 0");
    return GrowthBound{0.0, c, s, 0.0, 0.0};
}

GrowthBound GrowthBound::power_plus_exp(double M, double q, double c)
{
    if (!(M > 0) || !(c > 0) || !(q >= 0))
        throw ParameterError("growth bound: need M > 0, c > 0, q >= 0");
    return GrowthBound{0.0, M * c, 1.0, M, q};
}

GrowthBound GrowthBound::from_psi(const PsiSpec& psi, int k)
{
    const PFactor& pf = psi.pfactor();
    const double deg = pf.gamma * pf.sigma;
    double kappa = 1.0;
    if (pf.sigma != 0.0) {
        if (deg > k)
            throw PreconditionError("growth bound: gradient factor grows faster than 1 + p^k");
        // (1+x)^s <= 1 + x^s for s <= 1, and <= 2^{s-1}(1 + x^s) otherwise;
        // then p^deg <= 1 + p^k when deg < k.
        const double base = pf.sigma <= 1.0 ? 1.0 : std::pow(2.0, pf.sigma - 1.0);
        kappa = deg == k ? base : 2.0 * base;
    }
    const ZFactor& zf = psi.zfactor();
    const double K = kappa * psi.M();
    return GrowthBound{K * zf.c0, K * zf.c1, zf.rho, K * zf.c2, zf.q};
}

double GrowthBound::operator()(double z) const
{
    double v = c0;
    if (c1 != 0.0) v += c1 * std::exp(rho * z);
    if (c2 != 0.0) v += c2 * std::pow(std::max(z, 0.0), q);
    return v;
}

bool GrowthBound::decays_at_minus_infinity(double eps) const
{
    // e^{-eps z} phi(z) on z <= 0: the constant term blows up, the
    // exponential term stays bounded iff rho >= eps.
    if (c0 > 0) return false;
    if (c1 > 0 && rho < eps) return false;
    return true;
}

namespace {

constexpr double kEtaZHi = 50.0;
constexpr double kEtaStep = 0.01;

template <class F>
double golden_max(F&& f, double lo, double hi, int iters = 80)
{
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace

double eta_bound_violation(const GrowthBound& phi, const EtaSpec& eta, double z_lo, double z_hi)
{
    const int steps = static_cast<int>(std::ceil((z_hi - z_lo) / kEtaStep));
    double running = -std::numeric_limits<double>::infinity();
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        const double z = std::min(z_hi, z_lo + i * kEtaStep);
        running = std::max(running, phi(z));
        const double bound = std::exp(z) * eta(z);
        worst = std::max(worst, (running - bound) / (1.0 + bound));
    }
    return worst;
}

EtaSpec eta_from_phi(const GrowthBound& phi, std::optional<double> z_floor)
{
    if (phi.c0 < 0 || phi.c1 < 0 || phi.c2 < 0 || phi.q < 0 || phi.rho < 0)
        throw PreconditionError("eta_from_phi: growth bound must be nonnegative and nondecreasing");
    if (phi.c0 + phi.c1 <= 0 && phi.c2 <= 0)
        throw PreconditionError("eta_from_phi: growth bound vanishes identically");
    if (!z_floor && !phi.decays_at_minus_infinity(1.0))
        throw PreconditionError("eta_from_phi: sup_{z<=0} e^{-z} phi(z) is infinite; supply a floor");
    const double z_lo = z_floor.value_or(-50.0);
    if (!(z_lo < kEtaZHi)) throw ParameterError("eta_from_phi: floor must lie below 50");

    // Exponential part dictates the growth rate of eta; everything else is
    // absorbed into the constant.
    const double s = phi.c1 > 0 ? std::max(0.0, phi.rho - 1.0) : 0.0;
    auto g = [&](double z) { return std::exp(-(1.0 + s) * z) * phi(z); };

    const int steps = static_cast<int>(std::ceil((kEtaZHi - z_lo) / kEtaStep));
    double best = -1.0;
    int arg = 0;
    for (int i = 0; i <= steps; ++i) {
        const double z = std::min(kEtaZHi, z_lo + i * kEtaStep);
        const double v = g(z);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    const double a = std::max(z_lo, z_lo + (arg - 1) * kEtaStep);
    const double b = std::min(kEtaZHi, z_lo + (arg + 1) * kEtaStep);
    best = std::max(best, golden_max(g, a, b));
    const EtaSpec eta = s == 0.0 ? EtaSpec::constant(best * (1.0 + 1e-10))
                                 : EtaSpec::exp(best * (1.0 + 1e-10), s);
    if (eta_bound_violation(phi, eta, z_lo) > 0.0)
        throw NumericalError("eta_from_phi: grid verification failed");
    return eta;
}

double phi_time_bound(const Dim& dim, const EtaSpec& eta)
{
    const double A = a_k_const(dim.n, dim.k);
    return std::sqrt(2.0 * dim.k * std::pow(A / eta(0.0), 1.0 / dim.k));
}

// ---------------------------------------------------------------------------
// blow-up IVP

PhiSolution::PhiSolution(const Dim& dim, const EtaSpec& eta, double rtol, double cap)
    : dim_(dim), eta_(eta), A_(a_k_const(dim.n, dim.k)), cap_(cap)
{
    dim.require_radial();
    if (!(cap > 0)) throw ParameterError("phi ivp: cap must be positive");
    opts_.rtol = rtol;
    opts_.atol = rtol * 1e-3;
    opts_.h_init = 1e-3;

    using State = DormandPrince<1>::State;

    // Phase 1: phi(r) until phi' >= 1.
    auto f1 = [this](double r, const State& y) {
        State d;
        d(0) = slope(r, y(0));
        return d;
    };
    DormandPrince<1> dp1(opts_);
    double r = 0.0;
    State y;
    y(0) = 0.0;
    r1_ = {0.0};
    phi1_ = {0.0};
    const double r_end = 2.0 * phi_time_bound(dim, eta) + 1.0;
    auto st = dp1.advance(f1, r, y, r_end, [&](double t, const State& v) {
        r1_.push_back(t);
        phi1_.push_back(v(0));
        return slope(t, v(0)) >= 1.0;
    });
    if (st != OdeStatus::Stopped)
        throw NumericalError("phi ivp: phase 1 ended without reaching unit slope (status " +
                             std::to_string(static_cast<int>(st)) + ")");

    // Phase 2: r(phi) up to the cap.
    auto f2 = [this](double p, const State& v) {
        State d;
        d(0) = dr_dphi(v(0), p);
        return d;
    };
    DormandPrince<1> dp2(opts_);
    dp2.set_step_size(1e-2);
    double p = phi1_.back();
    State rr;
    rr(0) = r1_.back();
    phi2_ = {p};
    r2_ = {rr(0)};
    if (p < cap_) {
        st = dp2.advance(f2, p, rr, cap_, [&](double t, const State& v) {
            phi2_.push_back(t);
            r2_.push_back(v(0));
            return false;
        });
        if (st != OdeStatus::Reached)
            throw NumericalError("phi ivp: step-size underflow before the cap");
    }
    T_ = r2_.back();
}

double PhiSolution::slope(double r, double phi) const
{
    if (r <= 0.0) return 0.0;
    const int k = dim_.k;
    const double logE = phi + std::log(eta_(phi)) - std::log(A_);
    const double X = std::exp(k * std::log(r) + logE);
    if (X > 700.0) return std::numeric_limits<double>::infinity();
    const double g = std::expm1(X) / X;
    return r * std::exp(logE / k) * std::pow(g, 1.0 / k);
}

double PhiSolution::curvature(double r, double phi) const
{
    const int k = dim_.k;
    const double logE = phi + std::log(eta_(phi)) - std::log(A_);
    const double E1k = std::exp(logE / k);
    if (r <= 0.0) return E1k;
    const double X = std::exp(k * std::log(r) + logE);
    if (X > 700.0) return std::numeric_limits<double>::infinity();
    const double g = std::expm1(X) / X;
    const double p = slope(r, phi);
    const double ratio = eta_(phi) > 0 ? eta_.deriv(phi) / eta_(phi) : 0.0;
    return (1.0 + std::pow(p, k)) * E1k * std::pow(g, -double(k - 1) / k) * (1.0 + r * p * (1.0 + ratio) / k);
}

double PhiSolution::log_identity_residual(double r, double phi) const
{
    const int k = dim_.k;
    const double X = std::pow(r, k) * std::exp(phi) * eta_(phi) / A_;
    const double lhs = std::log1p(std::pow(slope(r, phi), k));
    return std::abs(lhs - X) / (1.0 + X);
}

double PhiSolution::dr_dphi(double r, double phi) const
{
    const int k = dim_.k;
    const double logX = k * std::log(r) + phi + std::log(eta_(phi)) - std::log(A_);
    const double X = std::exp(logX);
    // ln(e^X - 1)
    const double L = X > 30.0 ? X + std::log1p(-std::exp(-X)) : std::log(std::expm1(X));
    return std::exp(-L / k);
}

double PhiSolution::value(double s) const
{
    if (!(s >= 0.0) || s >= T_)
        throw DomainError("phi: evaluation point " + format_double(s) + " outside [0, T)");
    using State = DormandPrince<1>::State;
    const DormandPrince<1> dp(opts_);
    if (s <= r1_.back()) {
        const auto it = std::upper_bound(r1_.begin(), r1_.end(), s);
        const std::size_t j = static_cast<std::size_t>(it - r1_.begin()) - 1;
        if (s == r1_[j]) return phi1_[j];
        auto f1 = [this](double r, const State& y) {
            State d;
            d(0) = slope(r, y(0));
            return d;
        };
        State y;
        y(0) = phi1_[j];
        return dp.single_step(f1, r1_[j], y, s - r1_[j])(0);
    }
    const auto it = std::upper_bound(r2_.begin(), r2_.end(), s);
    if (it == r2_.end()) throw DomainError("phi: evaluation point beyond the cap radius");
    const std::size_t j = static_cast<std::size_t>(it - r2_.begin()) - 1;
    if (s == r2_[j]) return phi2_[j];
    auto f2 = [this](double p, const State& v) {
        State d;
        d(0) = dr_dphi(v(0), p);
        return d;
    };
    State y;
    y(0) = r2_[j];
    double lo = 0.0, hi = phi2_[j + 1] - phi2_[j];
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * (1.0 + phi2_[j]); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (dp.single_step(f2, phi2_[j], y, mid)(0) < s)
            lo = mid;
        else
            hi = mid;
    }
    return phi2_[j] + 0.5 * (lo + hi);
}

RadialProfile PhiSolution::profile(const Eigen::VectorXd& s) const
{
    const Eigen::Index N = s.size();
    Eigen::VectorXd u(N), du(N), ddu(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        u(i) = value(s(i));
        du(i) = slope(s(i), u(i));
        ddu(i) = curvature(s(i), u(i));
        if (!std::isfinite(du(i)) || !std::isfinite(ddu(i)))
            throw NumericalError("phi: derivative overflow at node " + std::to_string(i));
    }
    return RadialProfile(T_, s, u, du, ddu, "barrier:phi");
}

std::shared_ptr<const PhiSolution> solve_phi_ivp(const Dim& dim, const EtaSpec& eta, double tol)
{
    dim.require_radial();
    if (!(tol > 0)) throw ParameterError("phi ivp: tol must be positive");
    double rtol = std::min(1e-7, tol);
    auto prev = std::make_shared<const PhiSolution>(dim, eta, rtol);
    while (rtol > 1e-14) {
        rtol /= 10.0;
        auto cur = std::make_shared<const PhiSolution>(dim, eta, rtol);
        if (std::abs(cur->blowup_time() - prev->blowup_time()) <= tol) return cur;
        prev = cur;
    }
    throw NumericalError("phi ivp: blow-up time did not settle under tolerance refinement");
}

Eigen::VectorXd BarrierGrid::unit_nodes() const
{
    if (nodes < 2) throw ParameterError("barrier grid: need at least two nodes");
    if (!(delta > 0 && delta < 1)) throw ParameterError("barrier grid: delta must lie in (0, 1)");
    return Eigen::VectorXd::LinSpaced(nodes, 0.0, 1.0 - delta);
}

// ---------------------------------------------------------------------------
// sub-barrier

double SubBarrier::value(double r) const
{
    if (!(r >= 0.0) || r >= a) throw DomainError("sub-barrier: radius outside [0, a)");
    return ivp->value(T * r / a) - shift;
}

PsiSpec SubBarrier::rhs() const { return PsiSpec::exp_grad(eta.c, 1.0 + eta.s, dim.k); }

SubBarrier make_sub_barrier(double a, std::shared_ptr<const PhiSolution> ivp, const BarrierGrid& grid)
{
    if (!(a > 0)) throw ParameterError("sub-barrier: radius must be positive");
    if (!ivp) throw ParameterError("sub-barrier: missing IVP solution");
    SubBarrier sb;
    sb.a = a;
    sb.dim = ivp->dim();
    sb.eta = ivp->eta();
    sb.T = ivp->blowup_time();
    sb.shift = 2.0 * sb.dim.k * std::max(0.0, std::log(a / sb.T));
    sb.ivp = ivp;

    const Eigen::VectorXd t = grid.unit_nodes();
    sb.phi = ivp->profile(sb.T * t);
    const double sc = sb.T / a;
    sb.profile = RadialProfile(a, a * t, sb.phi.u().array() - sb.shift, sc * sb.phi.du(),
                               Eigen::VectorXd(sc * sc * *sb.phi.ddu()), "barrier:sub");
    return sb;
}

SubBarrier make_sub_barrier(double a, const Dim& dim, const EtaSpec& eta, const BarrierGrid& grid, double tol)
{
    return make_sub_barrier(a, solve_phi_ivp(dim, eta, tol), grid);
}

CheckReport verify_sub_barrier(const SubBarrier& sub, double tol)
{
    CheckReport rep = check_subsolution(sub.profile, sub.rhs(), sub.dim, tol);
    rep.name = "sub-barrier";
    return rep;
}

// ---------------------------------------------------------------------------
// super-barrier

double super_ratio(double r, const Dim& dim, double q)
{
    dim.require_radial();
    const int k = dim.k;
    if (!(q > k)) throw ParameterError("super-barrier: need q > k");
    if (!(r >= 0.0) || r >= 1.0) throw DomainError("super-barrier: radius outside [0, 1)");
    const double e = (k + 1.0) / (q - k);
    const double t = 1.0 - r * r;
    const double w = std::pow(t, -e);
    const double w1 = 2.0 * e * r * std::pow(t, -e - 1.0);
    const double w2 = 2.0 * e * std::pow(t, -e - 1.0) + 4.0 * e * (e + 1.0) * r * r * std::pow(t, -e - 2.0);
    return sk_radial(w1, w2, r, dim) / std::pow(w, q);
}

namespace {

struct GridMax {
    double value;
    double arg;
    double left, right;
};

GridMax super_grid_max(const Dim& dim, double q, int m)
{
    std::vector<double> rs;
    rs.reserve(2 * m);
    for (int i = 0; i < m; ++i) rs.push_back(0.99 * i / (m - 1));
    for (int i = 1; i <= m; ++i) rs.push_back(1.0 - std::pow(10.0, -2.0 - 4.0 * i / m));
    GridMax g{-1.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double v = super_ratio(rs[i], dim, q);
        if (!std::isfinite(v)) throw NumericalError("super-barrier: non-finite ratio");
        if (v > g.value) {
            g.value = v;
            g.arg = rs[i];
            g.left = i > 0 ? rs[i - 1] : rs[i];
            g.right = i + 1 < rs.size() ? rs[i + 1] : rs[i];
        }
    }
    return g;
}

} // namespace

SuperConstant super_constant(const Dim& dim, double q)
{
    dim.require_radial();
    if (!(q > dim.k)) throw ParameterError("super-barrier: need q > k");
    int m = 1000;
    GridMax prev = super_grid_max(dim, q, m);
    for (int level = 0; level < 8; ++level) {
        m *= 2;
        const GridMax cur = super_grid_max(dim, q, m);
        const double change = std::abs(cur.value - prev.value) / cur.value;
        if (change <= 0.005) {
            double sup = cur.value;
            if (cur.right > cur.left)
                sup = std::max(sup, golden_max([&](double r) { return super_ratio(r, dim, q); }, cur.left,
                                               cur.right));
            return SuperConstant{1.01 * sup, sup, cur.arg, change};
        }
        prev = cur;
    }
    throw NumericalError("super-barrier: ratio maximum not stable under grid refinement");
}

double SuperBarrier::value(double r) const
{
    const double e = (dim.k + 1.0) / (q - dim.k);
    const double x = r / a;
    return lam * std::pow(1.0 - x * x, -e);
}

double SuperBarrier::d1(double r) const
{
    const double e = (dim.k + 1.0) / (q - dim.k);
    const double x = r / a;
    return lam * 2.0 * e * x * std::pow(1.0 - x * x, -e - 1.0) / a;
}

double SuperBarrier::d2(double r) const
{
    const double e = (dim.k + 1.0) / (q - dim.k);
    const double x = r / a, t = 1.0 - x * x;
    return lam * (2.0 * e * std::pow(t, -e - 1.0) + 4.0 * e * (e + 1.0) * x * x * std::pow(t, -e - 2.0)) / (a * a);
}

PsiSpec SuperBarrier::rhs() const { return PsiSpec::power(M, q, dim.k, 0.0); }

SuperBarrier make_super_barrier(double a, double M, double q, const Dim& dim, const BarrierGrid& grid,
                                std::optional<double> B)
{
    dim.require_radial();
    if (!(a > 0) || !(M > 0)) throw ParameterError("super-barrier: a and M must be positive");
    if (!(q > dim.k)) throw ParameterError("super-barrier: need q > k");
    SuperBarrier sb;
    sb.a = a;
    sb.M = M;
    sb.q = q;
    sb.dim = dim;
    sb.B = B ? *B : super_const_B(dim, q);
    if (!(sb.B > 0)) throw ParameterError("super-barrier: B must be positive");
    sb.lam = std::pow(sb.B / (std::pow(a, 2 * dim.k) * M), 1.0 / (q - dim.k));

    const Eigen::VectorXd r = a * grid.unit_nodes();
    Eigen::VectorXd u(r.size()), du(r.size()), ddu(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        u(i) = sb.value(r(i));
        du(i) = sb.d1(r(i));
        ddu(i) = sb.d2(r(i));
    }
    sb.profile = RadialProfile(a, r, u, du, ddu, "barrier:super");
    return sb;
}

CheckReport verify_super_barrier(const SuperBarrier& sup, double tol)
{
    CheckReport rep = check_supersolution(sup.profile, sup.rhs(), sup.dim, tol);
    rep.name = "super-barrier";
    return rep;
}

double hbar(double r, double M, double q, const Dim& dim, double B)
{
    if (!(r > 0)) throw DomainError("hbar: radius must be positive");
    if (!(M > 0)) throw ParameterError("hbar: M must be positive");
    if (!(q > dim.k)) throw ParameterError("hbar: need q > k");
    return std::pow(B / (std::pow(r, 2 * dim.k) * M), 1.0 / (q - dim.k));
}

double hbar(double r, double M, double q, const Dim& dim) { return hbar(r, M, q, dim, super_const_B(dim, q)); }

UpperEnvelope::UpperEnvelope(const Dim& dim, double M, double q, std::optional<double> B)
    : dim_(dim), M_(M), q_(q), B_(B ? *B : super_const_B(dim, q))
{
    if (!(M > 0)) throw ParameterError("envelope: M must be positive");
}

double UpperEnvelope::operator()(double d) const { return hbar(d, M_, q_, dim_, B_); }

double UpperEnvelope::log_slope() const { return -2.0 * dim_.k / (q_ - dim_.k); }

// ---------------------------------------------------------------------------
// gradient barrier

namespace {

double grad_beta(double alpha)
{
    if (!(alpha > 1)) throw ParameterError("gradient barrier: need alpha > 1");
    return 1.0 / (alpha - 1.0);
}

void grad_domain(double r)
{
    if (!(r >= 0.0) || r >= 1.0) throw DomainError("gradient barrier: r outside [0, 1)");
}

// ((1 - t)^{-beta} - 1) / t, continuous at t = 0 with value beta.
double grad_g(double t, double beta)
{
    if (t == 0.0) return beta;
    return std::expm1(-beta * std::log1p(-t)) / t;
}

} // namespace

double grad_phi_d1(double r, int k, double alpha)
{
    grad_domain(r);
    const double beta = grad_beta(alpha);
    return r * std::pow(grad_g(std::pow(r, k + 1), beta), 1.0 / k);
}

double grad_phi_d2(double r, int k, double alpha)
{
    grad_domain(r);
    const double beta = grad_beta(alpha);
    const double t = std::pow(r, k + 1);
    const double g = grad_g(t, beta);
    return ((k + 1) * beta * std::pow(1.0 - t, -beta - 1.0) - g) / (k * std::pow(g, double(k - 1) / k));
}

double grad_phi(double r, int k, double alpha)
{
    grad_domain(r);
    grad_beta(alpha);
    return integrate([&](double t) { return grad_phi_d1(t, k, alpha); }, 0.0, r, 1e-15, 1e-14);
}

double grad_identity_residual(double r, int k, double alpha)
{
    const double beta = grad_beta(alpha);
    const double rhs = std::pow(1.0 - std::pow(r, k + 1), -beta);
    const double lhs = 1.0 + r * std::pow(grad_phi_d1(r, k, alpha), k);
    return std::abs(lhs - rhs) / rhs;
}

double GradBarrier::bound_constant() const
{
    const int n = dim.n, k = dim.k;
    return (k + 1) * factorial(n - 1) / (std::pow(a, k) * (alpha - 1.0) * factorial(k) * factorial(n - k - 1));
}

PsiSpec GradBarrier::rhs() const { return PsiSpec::grad_power(bound_constant(), alpha, dim.k); }

GradBarrier make_grad_barrier(double a, const Dim& dim, double alpha, const BarrierGrid& grid)
{
    dim.require_radial();
    if (!(a > 0)) throw ParameterError("gradient barrier: radius must be positive");
    GradBarrier gb;
    gb.a = a;
    gb.alpha = alpha;
    gb.beta = grad_beta(alpha);
    gb.dim = dim;
    const int k = dim.k;

    const Eigen::VectorXd s = grid.unit_nodes();
    const Eigen::Index N = s.size();
    Eigen::VectorXd phi(N), d1(N), d2(N);
    phi(0) = 0.0;
    for (Eigen::Index i = 0; i < N; ++i) {
        if (i > 0)
            phi(i) = phi(i - 1) + integrate([&](double t) { return grad_phi_d1(t, k, alpha); }, s(i - 1), s(i),
                                            1e-16, 1e-14);
        d1(i) = grad_phi_d1(s(i), k, alpha);
        d2(i) = grad_phi_d2(s(i), k, alpha);
    }
    gb.phi_hat = RadialProfile(1.0, s, phi, d1, d2, "barrier:grad-phi");
    gb.profile = RadialProfile(a, a * s, a * phi, d1, Eigen::VectorXd(d2 / a), "barrier:grad");
    return gb;
}

CheckReport verify_grad_barrier(const GradBarrier& g, double tol)
{
    CheckReport rep = check_supersolution(g.profile, g.rhs(), g.dim, tol);
    rep.name = "gradient barrier";
    return rep;
}

double threshold_radius(const Dim& dim, double alpha, double M)
{
    dim.require_radial();
    if (!(alpha > 1)) throw ParameterError("threshold: need alpha > 1");
    if (!(M > 0)) throw ParameterError("threshold: M must be positive");
    const int n = dim.n, k = dim.k;
    const double inner = (k + 1) * factorial(n - 1) / (M * (alpha - 1.0) * factorial(k) * factorial(n - k - 1));
    return std::pow(inner, 1.0 / k);
}

// ---------------------------------------------------------------------------
// global subsolution candidates A e^{b r^2}

namespace {

// ln(1 + e^x)
double softplus(double x) { return x > 30.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

} // namespace

GlobalSubsolReport global_subsol_check(double A, double b, double M, double q, double gamma, const Dim& dim,
                                       double r_max, int nodes)
{
    dim.require_radial();
    const int n = dim.n, k = dim.k;
    if (!(A > 0) || !(b > 0) || !(M > 0)) throw ParameterError("global subsolution: A, b, M must be positive");
    if (!(q >= 0) || !(gamma >= 0)) throw ParameterError("global subsolution: q, gamma must be nonnegative");
    if (q + gamma > k) throw PreconditionError("global subsolution: need q + gamma <= k");
    if (!(r_max > 0) || nodes < 2) throw ParameterError("global subsolution: bad grid");

    const double Ak = a_k_const(n, k);
    GlobalSubsolReport rep;
    rep.A = A;
    rep.b = b;
    rep.min_rel_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nodes; ++i) {
        const double r = r_max * i / (nodes - 1);
        const double br2 = b * r * r;
        // S_k(D^2 u) = A_k (2bA)^k e^{k b r^2} (n + 2 k b r^2)
        const double lnL = std::log(Ak) + k * std::log(2.0 * b * A) + k * br2 + std::log(n + 2.0 * k * br2);
        const double lnu = std::log(A) + br2;
        double lnR = std::log(M) + softplus(q * lnu);
        if (r > 0 && gamma > 0) lnR += softplus(gamma * (std::log(2.0 * b * A * r) + br2));
        else if (gamma == 0) lnR += std::log(2.0);
        const double rel = std::expm1(std::min(lnL - lnR, 700.0));
        if (rel < rep.min_rel_slack) {
            rep.min_rel_slack = rel;
            rep.worst_r = r;
        }
    }

    const double gap = k - (q + gamma);
    rep.exponent_gap = gap > 0 ? 1 : (gap < 0 ? -1 : 0);
    if (rep.exponent_gap > 0) {
        rep.asymptotic_dominance = true;
    } else if (rep.exponent_gap == 0) {
        // LHS/RHS ~ const * r^{2 - gamma} for large r.
        rep.boundary_case = true;
        if (gamma < 2.0) {
            rep.asymptotic_dominance = true;
        } else if (gamma == 2.0) {
            const double lim = Ak * std::pow(2.0 * b * A, k) * 2.0 * k * b /
                               (M * std::pow(A, q) * std::pow(2.0 * b * A, gamma));
            rep.asymptotic_dominance = lim > 1.0;
        }
    }
    rep.passed = rep.min_rel_slack >= 0.0 && rep.asymptotic_dominance;
    return rep;
}

std::optional<GlobalSubsolReport> search_global_subsol(double M, double q, double gamma, const Dim& dim,
                                                       double r_max)
{
    for (double b : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0})
        for (double A : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
            auto rep = global_subsol_check(A, b, M, q, gamma, dim, r_max);
            if (rep.passed) return rep;
        }
    return std::nullopt;
}

} // namespace khess
