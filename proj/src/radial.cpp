#include "fraccat/radial.hpp"

#include <cmath>
#include <stdexcept>

namespace fraccat {

CatenoidArcJet catenoidArc_impl(double r) {
    if (r < 1.0) throw std::invalid_argument("catenoid_arc: r must be >= 1");
    CatenoidArcJet j{};
    j.F = std::acosh(r);
    const double q = r * r - 1.0;
    if (q <= 0.0) {
        j.F1 = j.F2 = j.F3 = std::numeric_limits<double>::infinity();
        j.derivatives_valid = false;
        return j;
    }
    j.F1 = 1.0 / std::sqrt(q);
    j.F2 = -r / (q * std::sqrt(q));
    j.F3 = (2.0 * r * r + 1.0) / (q * q * std::sqrt(q));
    j.derivatives_valid = true;
    return j;
}

CatenoidArcJet catenoid_arc(double r) { return catenoidArc_impl(r); }

namespace {

struct FnImpl : RadialFn::Impl {
    std::function<double(double)> f, f1, f2;
    double lo, hi;
    double r_min() const override { return lo; }
    double r_max() const override { return hi; }
    double value(double r) const override { return f(r); }
    double d1(double r) const override { return f1(r); }
    double d2(double r) const override { return f2(r); }
};

struct SampledImpl : RadialFn::Impl {
    CubicSpline F, D1, D2;
    double A, eA, B, eB;
    double lo, hi;

    double r_min() const override { return lo; }
    double r_max() const override { return std::numeric_limits<double>::infinity(); }
    double tail(double r, int k) const {
        double v = 0.0;
        double a = A, ea = eA, b = B, eb = eB;
        for (int j = 0; j < k; ++j) {
            a *= ea;
            ea -= 1.0;
            b *= eb;
            eb -= 1.0;
        }
        v = a * std::pow(r, ea) + b * std::pow(r, eb);
        return v;
    }
    double value(double r) const override { return r > hi ? tail(r, 0) : F.eval(r); }
    double d1(double r) const override { return r > hi ? tail(r, 1) : D1.eval(r); }
    double d2(double r) const override { return r > hi ? tail(r, 2) : D2.eval(r); }
};

struct RescaledImpl : RadialFn::Impl {
    RadialFn base;
    double eps;
    double r_min() const override { return base.r_min() / eps; }
    double r_max() const override { return base.r_max() / eps; }
    double value(double r) const override { return base(eps * r) / eps; }
    double d1(double r) const override { return base.d1(eps * r); }
    double d2(double r) const override { return eps * base.d2(eps * r); }
};

} // namespace

RadialFn RadialFn::catenoid() {
    auto impl = std::make_shared<FnImpl>();
    impl->f = [](double r) { return catenoidArc_impl(r).F; };
    impl->f1 = [](double r) { return catenoidArc_impl(r).F1; };
    impl->f2 = [](double r) { return catenoidArc_impl(r).F2; };
    impl->lo = 1.0;
    impl->hi = std::numeric_limits<double>::infinity();
    return RadialFn(impl);
}

RadialFn RadialFn::constant(double c) {
    auto impl = std::make_shared<FnImpl>();
    impl->f = [c](double) { return c; };
    impl->f1 = [](double) { return 0.0; };
    impl->f2 = [](double) { return 0.0; };
    impl->lo = 0.0;
    impl->hi = std::numeric_limits<double>::infinity();
    return RadialFn(impl);
}

RadialFn RadialFn::power_law(double A, double beta) {
    auto impl = std::make_shared<FnImpl>();
    impl->f = [=](double r) { return A * std::pow(r, beta); };
    impl->f1 = [=](double r) { return A * beta * std::pow(r, beta - 1.0); };
    impl->f2 = [=](double r) { return A * beta * (beta - 1.0) * std::pow(r, beta - 2.0); };
    impl->lo = 0.0;
    impl->hi = std::numeric_limits<double>::infinity();
    return RadialFn(impl);
}

RadialFn RadialFn::from_functions(std::function<double(double)> f,
                                  std::function<double(double)> f1,
                                  std::function<double(double)> f2, double r_lo, double r_hi) {
    auto impl = std::make_shared<FnImpl>();
    impl->f = std::move(f);
    impl->f1 = std::move(f1);
    impl->f2 = std::move(f2);
    impl->lo = r_lo;
    impl->hi = r_hi;
    return RadialFn(impl);
}

RadialFn make_sampled_radial(RadialProfileData data) {
    auto impl = std::make_shared<SampledImpl>();
    impl->lo = data.grid.front();
    impl->hi = data.grid.back();
    impl->F = CubicSpline(data.grid, data.values);
    impl->D1 = CubicSpline(data.grid, data.d1);
    impl->D2 = CubicSpline(data.grid, data.d2);
    impl->A = data.tail_A;
    impl->eA = data.tail_expA;
    impl->B = data.tail_B;
    impl->eB = data.tail_expB;
    return RadialFn(impl);
}

RadialFn rescale_radial(const RadialFn& F, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("rescale_radial: eps must be > 0");
    auto impl = std::make_shared<RescaledImpl>();
    impl->base = F;
    impl->eps = eps;
    return RadialFn(impl);
}

} // namespace fraccat
