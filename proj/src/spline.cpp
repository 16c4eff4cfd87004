#include "fraccat/spline.hpp"

#include <cmath>

namespace fraccat {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 4)
        throw std::invalid_argument("CubicSpline: need >= 4 matching nodes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i] < x_[i + 1]))
            throw std::invalid_argument("CubicSpline: grid must be strictly increasing");

    // Solve for second derivatives m_i with not-a-knot conditions via the
    // standard tridiagonal system (Thomas algorithm with the two corner rows
    // folded in).
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

    std::vector<double> diag(n), lower(n), upper(n), rhs(n);
    // Interior rows.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        lower[i] = h[i - 1];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        upper[i] = h[i];
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
    }
    // Not-a-knot: m''' continuous across x_1 and x_{n-2}.
    // h1*m0 - (h0+h1)*m1 + h0*m2 = 0, and symmetrically at the right end.
    // Eliminate m0 and m_{n-1} into the first/last interior rows.
    {
        const double a = h[1], b = -(h[0] + h[1]), c = h[0]; // a*m0 + b*m1 + c*m2 = 0
        // m0 = -(b*m1 + c*m2)/a
        diag[1] -= lower[1] * b / a;
        upper[1] -= lower[1] * c / a;
        lower[1] = 0.0;
    }
    {
        const std::size_t k = n - 2;
        const double a = h[n - 2], b = -(h[n - 3] + h[n - 2]), c = h[n - 3];
        // a*m_{n-1} + b*m_{n-2} + c*m_{n-3} = 0  =>  m_{n-1} = -(b*m_{n-2}+c*m_{n-3})/a
        diag[k] -= upper[k] * b / a;
        lower[k] -= upper[k] * c / a;
        upper[k] = 0.0;
    }

    std::vector<double> m(n, 0.0);
    // Thomas on rows 1..n-2.
    std::vector<double> cp(n), dp(n);
    cp[1] = upper[1] / diag[1];
    dp[1] = rhs[1] / diag[1];
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double denom = diag[i] - lower[i] * cp[i - 1];
        cp[i] = upper[i] / denom;
        dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m[i] = dp[i] - cp[i] * m[i + 1];
        if (i == 1) break;
    }
    m[0] = -((-(h[0] + h[1])) * m[1] + h[0] * m[2]) / h[1];
    m[n - 1] = -((-(h[n - 3] + h[n - 2])) * m[n - 2] + h[n - 3] * m[n - 3]) / h[n - 2];

    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        c_[i] = m[i] / 2.0;
        d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
    }
}

std::size_t CubicSpline::locate(double t) const {
    if (t <= x_.front()) return 0;
    if (t >= x_.back()) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double CubicSpline::eval(double t) const {
    const std::size_t i = locate(t);
    const double u = t - x_[i];
    return y_[i] + u * (b_[i] + u * (c_[i] + u * d_[i]));
}

double CubicSpline::deriv(double t) const {
    const std::size_t i = locate(t);
    const double u = t - x_[i];
    return b_[i] + u * (2.0 * c_[i] + 3.0 * u * d_[i]);
}

double CubicSpline::deriv2(double t) const {
    const std::size_t i = locate(t);
    const double u = t - x_[i];
    return 2.0 * c_[i] + 6.0 * u * d_[i];
}

} // namespace fraccat
