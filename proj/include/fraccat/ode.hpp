#pragma once

#include "fraccat/errors.hpp"

#include <array>
#include <cmath>

namespace fraccat {

/// Embedded Dormand-Prince 5(4) with PI step control.
///
/// Integrates y' = rhs(t, y) from t0 to t1 (t1 > t0) and returns y(t1).
/// Error control is per-component: |err_i| <= atol + rtol*|y_i|.
template <std::size_t N, class RHS>
std::array<double, N> integrate_dopri5(RHS&& rhs, std::array<double, N> y, double t0, double t1,
                                       double rtol = 1e-10, double atol = 1e-12) {
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

    if (!(t1 > t0)) return y;
    double t = t0;
    double h = std::min(1e-2 * (t1 - t0) + 1e-12, t1 - t0);
    std::array<double, N> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, yt{}, y5{};
    k1 = rhs(t, y);
    double err_prev = 1.0;
    int rejected_in_a_row = 0;

    for (long step = 0; step < 2000000; ++step) {
        if (t >= t1) return y;
        if (t + h > t1) h = t1 - t;

        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
        k2 = rhs(t + c2 * h, yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(t + c3 * h, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(t + c4 * h, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(t + c5 * h, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
        k6 = rhs(t + h, yt);
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = rhs(t + h, y5);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(e) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7; // FSAL
            const double fac =
                0.9 * std::pow(err + 1e-16, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            h *= std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(err, 1e-4);
            rejected_in_a_row = 0;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (++rejected_in_a_row > 60 || !(h > 1e-14 * (std::abs(t) + 1.0)))
                throw NonConvergence("integrate_dopri5: step size underflow");
        }
    }
    throw NonConvergence("integrate_dopri5: step budget exhausted");
}

} // namespace fraccat
