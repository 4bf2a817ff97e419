// psi.cpp
#include "khess/psi.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "khess/errors.hpp"
#include "khess/radial_profile.hpp"

namespace khess {

double ZFactor::operator()(double z) const
{
    double v = c0;
    if (c1 != 0.0) v += c1 * std::exp(rho * z);
    if (c2 != 0.0) v += c2 * std::pow(std::max(z, 0.0), q);
    return v;
}

double ZFactor::dz(double z) const
{
    double d = 0.0;
    if (c1 != 0.0) d += c1 * rho * std::exp(rho * z);
    if (c2 != 0.0 && z > 0.0 && q > 0.0) d += c2 * q * std::pow(z, q - 1.0);
    return d;
}

double PFactor::operator()(double p) const
{
    if (sigma == 0.0) return 1.0;
    return std::pow(1.0 + std::pow(std::abs(p), gamma), sigma);
}

PsiSpec::PsiSpec(std::string family, double M, ZFactor z, PFactor p)
    : family_(std::move(family)), M_(M), zf_(z), pf_(p)
{
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(M) || !finite(z.c0) || !finite(z.c1) || !finite(z.rho) || !finite(z.c2) ||
        !finite(z.q) || !finite(p.gamma) || !finite(p.sigma))
        throw ParameterError("psi: non-finite parameter");
    if (M < 0 || z.c0 < 0 || z.c1 < 0 || z.c2 < 0)
        throw ParameterError("psi: M and the coefficients c0, c1, c2 must be nonnegative");
    if (z.q < 0 || p.gamma < 0 || p.sigma < 0)
        throw ParameterError("psi: exponents q, gamma, sigma must be nonnegative");
}

PsiSpec PsiSpec::constant(double M)
{
    if (!(M > 0)) throw ParameterError("constant psi: M must be positive");
    return PsiSpec("constant", M, ZFactor{1, 0, 0, 0, 0}, PFactor{0, 0});
}

PsiSpec PsiSpec::subcrit_product(double M, double q, double gamma)
{
    if (!(M > 0)) throw ParameterError("subcrit psi: M must be positive");
    return PsiSpec("subcrit", M, ZFactor{1, 0, 0, 1, q}, PFactor{gamma, 1});
}

PsiSpec PsiSpec::grad_power(double M, double alpha, int k)
{
    if (!(M > 0)) throw ParameterError("gradpower psi: M must be positive");
    if (!(alpha > 0)) throw ParameterError("gradpower psi: alpha must be positive");
    return PsiSpec("gradpower", M, ZFactor{1, 0, 0, 0, 0}, PFactor{double(k), alpha});
}

PsiSpec PsiSpec::exist_product(double a0, double b0, double rho, double q, int k)
{
    if (!(a0 > 0) || !(b0 > 0) || !(rho > 0))
        throw ParameterError("exist psi: a0, b0, rho must be positive");
    const double c2 = q > k ? 1.0 : 0.0;
    return PsiSpec("exist", 1.0, ZFactor{a0, b0, rho, c2, q}, PFactor{2.0 * k, 0.5});
}

PsiSpec PsiSpec::power(double M, double q, int k, double sigma)
{
    if (!(M > 0)) throw ParameterError("power psi: M must be positive");
    return PsiSpec("power", M, ZFactor{0, 0, 0, 1, q}, PFactor{double(k), sigma});
}

PsiSpec PsiSpec::growth(double M, double q, int k, double sigma)
{
    if (!(M > 0)) throw ParameterError("growth psi: M must be positive");
    return PsiSpec("growth", M, ZFactor{1, 0, 0, 1, q}, PFactor{double(k), sigma});
}

PsiSpec PsiSpec::exp_grad(double c, double s, int k)
{
    if (!(c > 0)) throw ParameterError("expgrad psi: c must be positive");
    return PsiSpec("expgrad", c, ZFactor{0, 1, s, 0, 0}, PFactor{double(k), 1});
}

PsiSpec PsiSpec::scaled(double K) const
{
    if (!(K > 0)) throw ParameterError("psi: scale factor must be positive");
    PsiSpec out = *this;
    out.M_ *= K;
    return out;
}

bool PsiSpec::z_monotone() const
{
    return zf_.c1 * zf_.rho >= 0 && zf_.c2 >= 0 && zf_.q >= 0;
}

bool PsiSpec::z_strict() const
{
    return M_ > 0 && zf_.c1 > 0 && zf_.rho > 0;
}

bool PsiSpec::z_independent() const
{
    return (zf_.c1 == 0.0 || zf_.rho == 0.0) && zf_.c2 == 0.0;
}

bool PsiSpec::positive() const
{
    return M_ > 0 && (zf_.c0 > 0 || zf_.c1 > 0);
}

std::pair<bool, bool> PsiSpec::sampled_flags() const
{
    bool monotone = true, strict = true;
    for (int i = 0; i <= 200; ++i) {
        const double z = -30.0 + 0.3 * i;
        for (double p : {0.0, 0.5, 1.0, 3.0, 10.0}) {
            const double d = dz(z, p);
            if (d < 0) monotone = false;
            if (!(d > 0)) strict = false;
        }
    }
    return {monotone, strict};
}

std::pair<double, double> PsiSpec::power_lower_bound(int k) const
{
    if (zf_.c2 > 0 && zf_.q > k && M_ > 0)
        return {M_ * zf_.c2, zf_.q};
    return {0.0, 0.0};
}

std::string PsiSpec::describe() const
{
    std::ostringstream os;
    os << family_ << ":M=" << format_double(M_) << ",c0=" << format_double(zf_.c0)
       << ",c1=" << format_double(zf_.c1) << ",rho=" << format_double(zf_.rho)
       << ",c2=" << format_double(zf_.c2) << ",q=" << format_double(zf_.q)
       << ",gamma=" << format_double(pf_.gamma) << ",sigma=" << format_double(pf_.sigma);
    return os.str();
}

namespace {

std::map<std::string, double> parse_params(const std::string& body, const std::set<std::string>& allowed)
{
    std::map<std::string, double> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParameterError("psi: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        if (!allowed.count(key))
            throw ParameterError("psi: unknown parameter '" + key + "'");
        double x = 0;
        auto res = std::from_chars(val.data(), val.data() + val.size(), x);
        if (res.ec != std::errc() || res.ptr != val.data() + val.size())
            throw ParameterError("psi: bad number '" + val + "' for " + key);
        out[key] = x;
    }
    return out;
}

double get(const std::map<std::string, double>& m, const std::string& key, double dflt)
{
    auto it = m.find(key);
    return it == m.end() ? dflt : it->second;
}

} // namespace

PsiSpec PsiSpec::parse(const std::string& text, const Dim& dim)
{
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
    const int k = dim.k;

    if (family == "constant") {
        auto p = parse_params(body, {"M"});
        return constant(get(p, "M", 1.0));
    }
    if (family == "subcrit") {
        auto p = parse_params(body, {"M", "q", "gamma"});
        return subcrit_product(get(p, "M", 1.0), get(p, "q", 0.0), get(p, "gamma", 0.0));
    }
    if (family == "gradpower") {
        auto p = parse_params(body, {"M", "alpha"});
        return grad_power(get(p, "M", 1.0), get(p, "alpha", 2.0), k);
    }
    if (family == "exist") {
        auto p = parse_params(body, {"a0", "b0", "rho", "q"});
        return exist_product(get(p, "a0", 1.0), get(p, "b0", 1.0), get(p, "rho", 1.0),
                             get(p, "q", k + 1.0), k);
    }
    if (family == "power") {
        auto p = parse_params(body, {"M", "q", "sigma"});
        return power(get(p, "M", 1.0), get(p, "q", k + 1.0), k, get(p, "sigma", 0.0));
    }
    if (family == "growth") {
        auto p = parse_params(body, {"M", "q", "sigma"});
        return growth(get(p, "M", 1.0), get(p, "q", k + 1.0), k, get(p, "sigma", 0.5));
    }
    if (family == "expgrad") {
        auto p = parse_params(body, {"c", "s"});
        return exp_grad(get(p, "c", 1.0), get(p, "s", 1.0), k);
    }
    if (family == "custom") {
        auto p = parse_params(body, {"M", "c0", "c1", "rho", "c2", "q", "gamma", "sigma"});
        return PsiSpec("custom", get(p, "M", 1.0),
                       ZFactor{get(p, "c0", 1.0), get(p, "c1", 0.0), get(p, "rho", 0.0),
                               get(p, "c2", 0.0), get(p, "q", 0.0)},
                       PFactor{get(p, "gamma", 0.0), get(p, "sigma", 0.0)});
    }
    throw ParameterError("psi: unknown family '" + family + "'");
}

} // namespace khess
