// quadrature.hpp
#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

#include "khess/errors.hpp"

namespace khess {

namespace detail {

struct Panel {
    double value, err, rounding;
};

// One Gauss-Kronrod 7/15 panel: Kronrod value, |K - G|, and the rounding
// level of the panel's L1 sum (panels at that level stop refining). Boost supplies the
// node and weight tables; its own error estimate has an absolute floor that
// is too coarse for panels near a singular endpoint.
template <class F>
Panel gk15(F& f, double a, double b)
{
    using K = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    const auto& x = K::abscissa(); // x[0] = 0, then 7 positive nodes; odd indices are Gauss nodes
    const auto& wk = K::weights();
    const auto& wg = G::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kv = wk[0] * fc, gv = wg[0] * fc, l1 = wk[0] * std::abs(fc);
    for (std::size_t j = 1; j < x.size(); ++j) {
        const double fl = f(c - h * x[j]), fr = f(c + h * x[j]);
        kv += wk[j] * (fl + fr);
        l1 += wk[j] * (std::abs(fl) + std::abs(fr));
        if (j % 2 == 0) gv += wg[j / 2] * (fl + fr);
    }
    const double rounding = 50.0 * std::numeric_limits<double>::epsilon() * l1 * std::abs(h);
    return {kv * h, std::abs((kv - gv) * h), rounding};
}

// Bisection with the tolerance split between halves, so deep refinement
// stays local to a near-singular endpoint.
template <class F>
double adaptive(F& f, double a, double b, const Panel& p, double tol, int depth)
{
    if (p.err <= std::max(tol, p.rounding) || depth <= 0) {
        if (p.err > 1e3 * std::max(tol, p.rounding))
            throw NumericalError("quadrature: recursion limit reached before tolerance");
        return p.value;
    }
    const double m = 0.5 * (a + b);
    return adaptive(f, a, m, gk15(f, a, m), 0.5 * tol, depth - 1) +
           adaptive(f, m, b, gk15(f, m, b), 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b] to absolute tolerance
/// max(abs_tol, rel_tol * |I|).
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-14, double rel_tol = 1e-13)
{
    if (a == b) return 0.0;
    const detail::Panel whole = detail::gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(whole.value));
    const double v = detail::adaptive(f, a, b, whole, tol, 50);
    if (!std::isfinite(v)) throw NumericalError("quadrature: non-finite integral");
    return v;
}

} // namespace khess
