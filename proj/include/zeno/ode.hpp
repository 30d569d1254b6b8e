#pragma once

#include "zeno/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace zeno {

struct OdeOptions {
    double rtol = 1e-7;
    double atol = 1e-9;
    double h_init = 0.0;  // 0: chosen from ||dy/dt||
    double h_max = std::numeric_limits<double>::infinity();
    double h_min_rel = 1e-13;
    long max_steps = 100'000'000;
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
    double h_last = 0.0;
};

namespace detail {

template <class State>
double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0.data()[i]), std::abs(y1.data()[i]));
        m = std::max(m, std::abs(err.data()[i]) / sc);
    }
    return m;
}

template <class State>
double max_abs(const State& y) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) m = std::max(m, std::abs(y.data()[i]));
    return m;
}

}  // namespace detail

// Dormand-Prince 5(4) from t0 to t1. `h` carries the step size across calls
// (0 on first use). After every accepted step `post(t, y)` may modify y in place
// and returns true if it did; it may also throw to abort.
template <class State, class Rhs, class Post>
OdeStats dopri5(Rhs&& f, State& y, double t0, double t1, double& h, const OdeOptions& o,
                Post&& post) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeStats st;
    if (t1 <= t0) return st;
    double t = t0;
    State k1 = f(t, y);
    ++st.rhs_evals;
    if (h <= 0.0) {
        if (o.h_init > 0.0) {
            h = o.h_init;
        } else {
            // keyed to ||dy/dt||: fast generators start with short steps
            const double d0 = detail::max_abs(y), d1 = detail::max_abs(k1);
            h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
            h = std::min(h, 0.1 * (t1 - t0));
        }
    }
    h = std::min(h, o.h_max);
    double err_prev = 1e-4;
    while (t < t1) {
        if (st.accepted + st.rejected >= o.max_steps)
            throw ComputationError("integrator exceeded max_steps");
        const bool last = t + h >= t1;
        const double hs = last ? t1 - t : h;
        if (hs <= o.h_min_rel * std::max(1.0, std::abs(t))) {
            std::ostringstream msg;
            msg << "step size underflow at t=" << t << " (h=" << hs << ")";
            throw ComputationError(msg.str());
        }
        State k2 = f(t + c2 * hs, State(y + hs * a21 * k1));
        State k3 = f(t + c3 * hs, State(y + hs * (a31 * k1 + a32 * k2)));
        State k4 = f(t + c4 * hs, State(y + hs * (a41 * k1 + a42 * k2 + a43 * k3)));
        State k5 = f(t + c5 * hs, State(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        State k6 = f(t + hs, State(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        State y1 = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        State k7 = f(t + hs, y1);
        st.rhs_evals += 6;
        State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = detail::error_norm(err, y, y1, o.atol, o.rtol);
        if (!std::isfinite(en)) {
            h = 0.25 * hs;
            ++st.rejected;
            continue;
        }
        if (en <= 1.0) {
            // PI step-size controller
            double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
            fac = std::clamp(fac, 0.2, 5.0);
            t = last ? t1 : t + hs;
            y = std::move(y1);
            err_prev = std::max(en, 1e-4);
            ++st.accepted;
            if (post(t, y)) {
                k1 = f(t, y);
                ++st.rhs_evals;
            } else {
                k1 = std::move(k7);
            }
            if (!last) h = std::min(hs * fac, o.h_max);
        } else {
            h = hs * std::max(0.2, 0.9 * std::pow(en, -0.2));
            ++st.rejected;
        }
    }
    st.h_last = h;
    return st;
}

template <class State, class Rhs>
OdeStats dopri5(Rhs&& f, State& y, double t0, double t1, double& h, const OdeOptions& o) {
    return dopri5(std::forward<Rhs>(f), y, t0, t1, h, o, [](double, State&) { return false; });
}

// Exponential of -i K for Hermitian K.
Matrix expm_hermitian(const Matrix& K);

// One fourth-order Magnus step U(t+h, t) for H(t) using two Gauss points.
Matrix magnus4_step(const std::function<Matrix(double)>& H, double t, double h);

}  // namespace zeno
