#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fraccat {

/// Cubic spline interpolant on a strictly increasing grid.
///
/// Not-a-knot end conditions, so smooth data is reproduced at O(h^4)
/// up to the boundary (natural splines would drop to O(h^2) there,
/// which the tail fits are sensitive to).
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;
    double deriv(double t) const;
    double deriv2(double t) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    bool empty() const { return x_.empty(); }

private:
    std::size_t locate(double t) const;

    std::vector<double> x_, y_;
    std::vector<double> b_, c_, d_; // piecewise coefficients on [x_i, x_{i+1}]
};

} // namespace fraccat
