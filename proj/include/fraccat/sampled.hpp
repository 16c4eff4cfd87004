#pragma once

#include "fraccat/spline.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace fraccat {

/// Algebraic far-field continuation f(z) -> limit -/+ coeff*|z|^{-power}.
/// The stored coeff is fit metadata; evaluation uses coefficients re-tied to
/// the actual edge values so the continuation is continuous at the grid ends
/// (kernel quadratures amplify any jump there).
struct AlgebraicTail {
    double power = 0.0;
    double coeff = 0.0;
    double limit_plus = 0.0;
    double limit_minus = 0.0;
};

/// A function sampled on a 1D grid: cubic-spline interpolation inside the
/// grid, optional algebraic tail continuation outside.
class Sampled1D {
public:
    Sampled1D() = default;
    Sampled1D(std::vector<double> grid, std::vector<double> values)
        : spline_(std::move(grid), std::move(values)) {}
    Sampled1D(std::vector<double> grid, std::vector<double> values, AlgebraicTail tail)
        : spline_(std::move(grid), std::move(values)) {
        set_tail(tail);
    }

    double operator()(double z) const {
        if (tail_) {
            if (z > spline_.x_max())
                return tail_->limit_plus - c_plus_ * std::pow(z, -tail_->power);
            if (z < spline_.x_min())
                return tail_->limit_minus + c_minus_ * std::pow(-z, -tail_->power);
        }
        return spline_.eval(z);
    }
    double deriv(double z) const {
        if (tail_ && z > spline_.x_max())
            return c_plus_ * tail_->power * std::pow(z, -tail_->power - 1.0);
        if (tail_ && z < spline_.x_min())
            return c_minus_ * tail_->power * std::pow(-z, -tail_->power - 1.0);
        return spline_.deriv(z);
    }
    double deriv2(double z) const {
        if (tail_ && z > spline_.x_max()) {
            const double p = tail_->power;
            return -c_plus_ * p * (p + 1.0) * std::pow(z, -p - 2.0);
        }
        if (tail_ && z < spline_.x_min()) {
            const double p = tail_->power;
            return c_minus_ * p * (p + 1.0) * std::pow(-z, -p - 2.0);
        }
        return spline_.deriv2(z);
    }

    double z_min() const { return spline_.x_min(); }
    double z_max() const { return spline_.x_max(); }
    const CubicSpline& spline() const { return spline_; }
    const std::optional<AlgebraicTail>& tail() const { return tail_; }
    double tail_coeff_plus() const { return c_plus_; }
    double tail_coeff_minus() const { return c_minus_; }

    void set_tail(AlgebraicTail t) {
        tail_ = t;
        c_plus_ = (t.limit_plus - spline_.values().back()) * std::pow(spline_.x_max(), t.power);
        c_minus_ =
            (spline_.values().front() - t.limit_minus) * std::pow(-spline_.x_min(), t.power);
    }

private:
    CubicSpline spline_;
    std::optional<AlgebraicTail> tail_;
    double c_plus_ = 0.0, c_minus_ = 0.0;
};

/// Symmetric grid on [-Z,Z] clustered at the origin: z = Z*sgn(t)*|t|^p
/// for t uniform in [-1,1]. n must be odd so 0 is a node.
std::vector<double> graded_symmetric_grid(double Z, int n, double p = 2.0);

/// One-sided grid on [a,b], geometric clustering toward a.
std::vector<double> geometric_grid(double a, double b, int n, double ratio_hint = 1.25);

} // namespace fraccat
