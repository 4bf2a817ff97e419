// ode.hpp
//
// Adaptive Dormand-Prince 5(4) integrator over fixed-size Eigen states.
#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace khess {

struct OdeOptions {
    double rtol = 1e-11;
    double atol = 1e-13;
    double h_init = 1e-3;
    double h_min = 1e-15; ///< relative to max(1, |t|)
    long max_steps = 2'000'000;
};

enum class OdeStatus { Reached, Stopped, Underflow, StepLimit };

template <int N>
class DormandPrince {
public:
    using State = Eigen::Matrix<double, N, 1>;

    explicit DormandPrince(OdeOptions opt = {}) : opt_(opt), h_(opt.h_init) {}

    double step_size() const { return h_; }
    void set_step_size(double h) { h_ = h; }
    long steps_taken() const { return steps_; }

    /// One embedded step of size h; returns the 5th-order solution and writes
    /// the error estimate. Non-finite stages propagate as NaN.
    template <class F>
    State single_step(F&& f, double t, const State& y, double h, State* err = nullptr) const
    {
        const State k1 = f(t, y);
        const State k2 = f(t + h / 5, y + h * (k1 / 5));
        const State k3 = f(t + 3 * h / 10, y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
        const State k4 = f(t + 4 * h / 5, y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
        const State k5 = f(t + 8 * h / 9, y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                                                   64448.0 / 6561 * k3 - 212.0 / 729 * k4));
        const State k6 = f(t + h, y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 + 46732.0 / 5247 * k3 +
                                           49.0 / 176 * k4 - 5103.0 / 18656 * k5));
        const State y5 = y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 -
                                  2187.0 / 6784 * k5 + 11.0 / 84 * k6);
        if (err) {
            const State k7 = f(t + h, y5);
            *err = h * (71.0 / 57600 * k1 - 71.0 / 16695 * k3 + 71.0 / 1920 * k4 -
                        17253.0 / 339200 * k5 + 22.0 / 525 * k6 - 1.0 / 40 * k7);
        }
        return y5;
    }

    /// Integrates from (t, y) towards t_end, updating both in place. After each
    /// accepted step stop(t, y) is consulted; returning true halts with
    /// OdeStatus::Stopped at that step.
    template <class F, class Stop>
    OdeStatus advance(F&& f, double& t, State& y, double t_end, Stop&& stop)
    {
        const double dir = t_end >= t ? 1.0 : -1.0;
        while (dir * (t_end - t) > 0) {
            if (++steps_ > opt_.max_steps) return OdeStatus::StepLimit;
            double h = std::min(std::abs(h_), std::abs(t_end - t));
            const bool last = h == std::abs(t_end - t);
            State err;
            const State y_new = single_step(f, t, y, dir * h, &err);
            double e = 0.0;
            bool finite = y_new.allFinite() && err.allFinite();
            if (finite) {
                for (int i = 0; i < y.size(); ++i) {
                    const double sc = opt_.atol + opt_.rtol * std::max(std::abs(y(i)), std::abs(y_new(i)));
                    e = std::max(e, std::abs(err(i)) / sc);
                }
            }
            if (!finite || e > 1.0) {
                const double fac = finite ? std::max(0.1, 0.9 * std::pow(e, -0.2)) : 0.25;
                h_ = h * fac;
                if (h_ < opt_.h_min * std::max(1.0, std::abs(t))) return OdeStatus::Underflow;
                continue;
            }
            t = last ? t_end : t + dir * h;
            y = y_new;
            const double grow = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
            if (!last || grow < 1.0) h_ = h * grow;
            if (stop(t, y)) return OdeStatus::Stopped;
        }
        return OdeStatus::Reached;
    }

    template <class F>
    OdeStatus advance(F&& f, double& t, State& y, double t_end)
    {
        return advance(std::forward<F>(f), t, y, t_end, [](double, const State&) { return false; });
    }

private:
    OdeOptions opt_;
    double h_;
    long steps_ = 0;
};

} // namespace khess
