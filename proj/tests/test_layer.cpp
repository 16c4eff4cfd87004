#include "doctest.h"

#include "fraccat/layer.hpp"

#include <cmath>

using namespace fraccat;

namespace {

// One solve shared by the whole binary; s = 0.75 is the workhorse case.
const LayerProfile& layer075() {
    static const LayerProfile p = solve_layer(FracOrder(0.75), 80.0, 801, 1e-10);
    return p;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("layer: odd, increasing, pinned at the origin") {
    const auto& p = layer075();
    const int n = p.node_count();
    const int mid = (n - 1) / 2;
    CHECK(p.values[mid] == 0.0);
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(p.values[i] + p.values[n - 1 - i]) < 1e-10);
        CHECK(std::abs(p.values[i]) < 1.0);
        if (i > 0) CHECK(p.values[i] > p.values[i - 1]);
        CHECK(p.deriv_values[i] > 0.0);
    }
}

TEST_CASE("layer: node residual under the production scheme") {
    const auto& p = layer075();
    CHECK(p.residual_sup <= 1e-5);
}

TEST_CASE("layer: residual stays below 1e-4 under a refined independent scheme") {
    const auto& p = layer075();
    QuadratureScheme fine = p.scheme().refined(2);
    double sup = 0.0;
    for (double z : {0.0, 0.13, 0.7, 1.9, 3.7, 8.3, 17.0, 33.0, 61.0})
        sup = std::max(sup, std::abs(layer_residual(p, z, fine)));
    CHECK(sup <= 1e-4);
}

TEST_CASE("layer: tail exponent 2s within 5% and c_w > 0") {
    const auto& p = layer075();
    CHECK(p.c_w > 0.0);
    CHECK(std::abs(p.tail_exponent_fit / 1.5 - 1.0) < 0.05);
}

TEST_CASE("layer: residual at the origin equals -f(w(0)) = 0") {
    const auto& p = layer075();
    CHECK(std::abs(layer_residual(p, 0.0, p.scheme())) < 1e-7);
}

TEST_CASE("layer: precondition validation") {
    CHECK_THROWS_AS(solve_layer(FracOrder(0.75), 30.0, 801, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(solve_layer(FracOrder(0.75), 80.0, 100, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(solve_layer(FracOrder(0.75), 80.0, 801, 1e-12), std::invalid_argument);
}

TEST_CASE("c_H is even") {
    const auto& p = layer075();
    const auto sch = p.scheme();
    for (double z0 : {0.5, 1.0, 4.0, 11.0}) {
        const double a = c_H(z0, p, sch);
        const double b = c_H(-z0, p, sch);
        CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("c_H: the two integral forms agree") {
    const auto& p = layer075();
    const auto sch = p.scheme();
    for (double z0 : {0.0, 1.0, 5.0, 10.0}) {
        const double a = c_H(z0, p, sch);
        const double b = c_H_alt(z0, p, sch);
        CHECK(a == doctest::Approx(b).epsilon(1e-5));
    }
    CHECK(c_H(0.0, p, sch) > 0.0);
}

TEST_CASE("c_H decays like z0^{-(2s-1)}") {
    const auto& p = layer075();
    const auto sch = p.scheme();
    std::vector<double> z{5.0, 10.0, 20.0}, v;
    for (double z0 : z) v.push_back(c_H(z0, p, sch));
    const double slope = loglog_slope(z, v);
    CHECK(std::abs(slope - (-0.5)) < 0.05); // -(2s-1) = -0.5 at s = 0.75
}

TEST_CASE("projection constants positive; insensitive to R_zeta") {
    const auto& p = layer075();
    CutoffPair cut;
    const auto c1 = projection_constants(p, cut, 15.0);
    CHECK(c1.C_bar > 0.0);
    CHECK(c1.C_bar_pm > 0.0);
    const auto c2 = projection_constants(p, cut, 30.0);
    CHECK(std::abs(c2.C_bar / c1.C_bar - 1.0) < 0.01);
    CHECK(std::abs(c2.C_bar_pm / c1.C_bar_pm - 1.0) < 0.01);
}

TEST_CASE("projection constants: trapezoid oracle for the inner integral") {
    const auto& p = layer075();
    CutoffPair cut;
    const auto c = projection_constants(p, cut, 20.0);
    // independent trapezoid evaluation of ∫ (1-w^2) ζ w' dz on a fine grid
    const auto f = p.sampled();
    const int N = 200000;
    const double a = -40.0, b = 40.0, h = (b - a) / N;
    double acc = 0.0;
    for (int i = 0; i <= N; ++i) {
        const double z = a + i * h;
        const double w = f(z);
        const double val = (1.0 - w * w) * cut.zeta(z, 20.0) * f.deriv(z);
        acc += (i == 0 || i == N) ? 0.5 * val : val;
    }
    acc *= h;
    CHECK(c.inner_weight == doctest::Approx(acc).epsilon(1e-6));
    CHECK(c.C_bar_pm == doctest::Approx(3.0 * p.c_w * acc).epsilon(1e-6));
}

TEST_CASE("far interaction: identity with f(a+b+1)-f(a)-f(b)") {
    const auto& p = layer075();
    auto f = [](double u) { return u * u * u - u; };
    const auto w = p.sampled();
    for (double zp : {-3.0, 0.4, 2.0, 30.0}) {
        for (double zm : {-11.0, 0.0, 5.5}) {
            const double lhs = far_interaction(p, zp, zm);
            const double a = w(zp), b = w(zm);
            const double rhs = f(a + b + 1.0) - f(a) - f(b);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("far interaction limits") {
    const auto& p = layer075();
    // both arguments deep in the +1 tail: approaches 24 from below
    const double v = far_interaction(p, 1e4, 1e4);
    CHECK(v == doctest::Approx(24.0).epsilon(1e-3));
    CHECK(v < 24.0);
    // one argument deep in the -1 tail: the (1+w(z-)) factor kills it
    CHECK(std::abs(far_interaction(p, 2.0, -1e5)) < 1e-5);
}
