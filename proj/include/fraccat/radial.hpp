#pragma once

#include "fraccat/spline.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace fraccat {

/// Jet of the catenoid arc f_C(r) = log(r + sqrt(r^2-1)) = arccosh(r).
struct CatenoidArcJet {
    double F;
    double F1, F2, F3;
    bool derivatives_valid; // false exactly at r = 1 where they blow up
};

/// Closed-form catenoid arc; rejects r < 1.
CatenoidArcJet catenoid_arc(double r);

/// Interface profile r -> F(r) with two derivatives; the handle has value
/// semantics over a shared immutable implementation.
class RadialFn {
public:
    struct Impl {
        virtual ~Impl() = default;
        virtual double r_min() const = 0;
        virtual double r_max() const = 0; // +inf when a tail model continues F
        virtual double value(double r) const = 0;
        virtual double d1(double r) const = 0;
        virtual double d2(double r) const = 0;
    };

    RadialFn() = default;
    explicit RadialFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    double r_min() const { return impl_->r_min(); }
    double r_max() const { return impl_->r_max(); }
    double operator()(double r) const { return impl_->value(r); }
    double d1(double r) const { return impl_->d1(r); }
    double d2(double r) const { return impl_->d2(r); }
    bool valid() const { return impl_ != nullptr; }

    static RadialFn catenoid(); // f_C on [1, inf)
    static RadialFn constant(double c);
    static RadialFn power_law(double A, double beta); // A r^beta on (0, inf)
    static RadialFn from_functions(std::function<double(double)> f,
                                   std::function<double(double)> f1,
                                   std::function<double(double)> f2, double r_lo,
                                   double r_hi = std::numeric_limits<double>::infinity());

private:
    std::shared_ptr<const Impl> impl_;
};

/// Sampled interface profile on [r1, R_out] with an algebraic two-term far
/// tail F ~ A r^{expA} + B r^{expB} past R_out.
struct RadialProfileData {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> d1;
    std::vector<double> d2;
    double tail_A = 0.0, tail_expA = 0.0;
    double tail_B = 0.0, tail_expB = 0.0;

    double r_start() const { return grid.front(); }
    double r_out() const { return grid.back(); }
};

/// Spline view of a sampled profile (value spline; derivatives from their own
/// splines so the pipeline's integrated derivatives are kept, not re-derived).
RadialFn make_sampled_radial(RadialProfileData data);

/// F_eps(r) = F(eps r) / eps on [r_min/eps, r_max/eps].
RadialFn rescale_radial(const RadialFn& F, double eps);

} // namespace fraccat
