#pragma once

#include "fraccat/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fraccat {

/// Walk [x0,x1] using knots as natural breakpoints, splitting further where
/// the (kernel-type) integrand varies fast relative to the distance from z0.
template <class F>
double integrate_knotwise(F&& g, const std::vector<double>& knots, double x0, double x1,
                          double z0) {
    if (!(x1 > x0)) return 0.0;
    double acc = 0.0;
    auto knot_after = std::upper_bound(knots.begin(), knots.end(), x0);
    double x = x0;
    while (x < x1 - 1e-14 * (std::abs(x1) + 1.0)) {
        double xk = (knot_after != knots.end()) ? *knot_after : x1;
        if (xk > x1) xk = x1;
        const double dist = std::max(std::abs(x - z0), 1e-300);
        double xe = std::min(xk, x + std::max(0.6 * dist, 1e-12));
        if (xe <= x) xe = xk;
        acc += gauss_panel<6>(g, x, xe);
        if (xe >= xk - 1e-14 * (std::abs(xk) + 1.0)) {
            while (knot_after != knots.end() && *knot_after <= xe) ++knot_after;
        }
        x = xe;
    }
    return acc;
}

/// Geometric ladder on [a,b] (0 < a < b) graded toward a; n panels.
template <class F>
double integrate_ladder(F&& g, double a, double b, int n) {
    if (!(b > a) || n < 1) return 0.0;
    double acc = 0.0;
    const double q = std::log(b / a) / n;
    double x = a;
    for (int i = 1; i <= n; ++i) {
        const double xe = (i == n) ? b : a * std::exp(q * i);
        acc += gauss_panel<6>(g, x, xe);
        x = xe;
    }
    return acc;
}

/// ∫_T^∞ z^{-p} (z-z0)^{-q} dz expanded in z0/z (|z0| << T), four terms.
/// Works for any q > 0 with p+q > 1.
inline double algebraic_tail_series(double T, double z0, double p, double q) {
    double coeff = 1.0, acc = 0.0, z0k = 1.0;
    for (int k = 0; k < 4; ++k) {
        acc += coeff * z0k * std::pow(T, -(p + q - 1.0 + k)) / (p + q - 1.0 + k);
        coeff *= (q + k) / (k + 1.0);
        z0k *= z0;
    }
    return acc;
}

} // namespace fraccat
