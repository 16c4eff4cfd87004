#include "doctest.h"

#include "fraccat/constants.hpp"
#include "fraccat/quadrature.hpp"
#include "fraccat/sampled.hpp"

#include <cmath>
#include <vector>

using namespace fraccat;

namespace {

Sampled1D sample(double Z, int n, double (*fn)(double)) {
    auto g = graded_symmetric_grid(Z, n | 1, 2.0);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g[i]);
    return Sampled1D(std::move(g), std::move(v));
}

// Decaying function with limits 0 at both ends: the algebraic closure then
// carries the constant part (f(z0) - 0) of the exterior integral exactly.
Sampled1D sample_decaying(double Z, int n, double (*fn)(double)) {
    auto g = graded_symmetric_grid(Z, n | 1, 2.0);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g[i]);
    AlgebraicTail t;
    t.power = 2.0;
    t.coeff = 0.0;
    t.limit_plus = 0.0;
    t.limit_minus = 0.0;
    return Sampled1D(std::move(g), std::move(v), t);
}

QuadratureScheme no_tail_scheme(double T) {
    QuadratureScheme sch;
    sch.tail_kind = QuadratureScheme::TailKind::none;
    sch.truncation_radius = T;
    return sch;
}

double gauss_bump(double z) { return std::exp(-z * z); }

} // namespace

TEST_CASE("(-Δ)^s of a constant vanishes") {
    auto f = sample(50.0, 801, [](double) { return 0.7; });
    const auto sch = no_tail_scheme(50.0);
    for (double z0 : {0.0, 1.0, 7.5}) {
        CHECK(std::abs(frac_laplacian_1d(f, z0, FracOrder(0.75), sch)) < 1e-12);
        CHECK(std::abs(frac_laplacian_1d(f, z0, FracOrder(0.6), sch)) < 1e-12);
    }
}

TEST_CASE("Fourier symbol on cos: (-Δ)^s cos(0) = 1") {
    // |ξ|^{2s} symbol at frequency 1; wide flat grid so the neglected tail
    // beyond the truncation stays under the tolerance.
    auto g = graded_symmetric_grid(1100.0, 22001, 1.0);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::cos(g[i]);
    Sampled1D f(std::move(g), std::move(v));
    auto sch = no_tail_scheme(2000.0);
    const double val = frac_laplacian_1d(f, 0.0, FracOrder(0.75), sch);
    CHECK(val == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("homogeneity: f(λz) picks up λ^{2s}") {
    const FracOrder s(0.75);
    QuadratureScheme sch;
    auto base = sample_decaying(40.0, 2001, &gauss_bump);
    const double at = 0.5; // evaluate f(λ·) at z0 where f-eval is at λ z0
    for (double lam : {0.5, 2.0}) {
        std::vector<double> grid = graded_symmetric_grid(40.0, 2001, 2.0);
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = gauss_bump(lam * grid[i]);
        AlgebraicTail t;
        t.power = 2.0;
        Sampled1D scaled(std::move(grid), std::move(v), t);
        const double lhs = frac_laplacian_1d(scaled, at, s, sch);
        const double rhs =
            std::pow(lam, s.two_s()) * frac_laplacian_1d(base, lam * at, s, sch);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-4));
    }
}

TEST_CASE("PV stability: halving the excision radius barely moves the value") {
    auto f = sample_decaying(50.0, 1601, &gauss_bump);
    const auto s = FracOrder(0.8);
    QuadratureScheme sch;
    const double v1 = frac_laplacian_1d(f, 0.3, s, sch);
    sch.excision_radius *= 0.5;
    const double v2 = frac_laplacian_1d(f, 0.3, s, sch);
    CHECK(std::abs(v2 - v1) < 1e-6 * std::abs(v1));
}

TEST_CASE("refinement check flags nothing on smooth input") {
    auto f = sample_decaying(50.0, 1601, &gauss_bump);
    const QuadratureScheme sch;
    CHECK_NOTHROW(frac_laplacian_1d_checked(f, 0.0, FracOrder(0.75), sch, 1e-5));
}

TEST_CASE("windowed flat reduction converges to the full operator as R1 grows") {
    auto f = sample_decaying(60.0, 1601, &gauss_bump);
    const auto s = FracOrder(0.75);
    const QuadratureScheme sch;
    const double full = frac_laplacian_1d(f, 0.2, s, sch);
    const double w20 = frac1d_window_flat(f, 0.2, s, 20.0, sch);
    const double w40 = frac1d_window_flat(f, 0.2, s, 40.0, sch);
    CHECK(std::abs(w40 - full) < std::abs(w20 - full));
    // exterior closure decays like R1^{-2s}
    const double ratio = std::abs(full - w20) / std::abs(full - w40);
    CHECK(ratio == doctest::Approx(std::pow(2.0, s.two_s())).epsilon(0.25));
}

TEST_CASE("kernel reduction matches the Lemma closed forms") {
    QuadratureScheme sch;
    sch.tail_kind = QuadratureScheme::TailKind::none;
    for (double sv : {0.6, 0.75, 0.9}) {
        const FracOrder s(sv);
        const double c1 = normalization_constant(1, s).value;
        const double c3 = normalization_constant(3, s).value;
        for (double zeta : {0.5, 1.0, 2.0, 4.0}) {
            const double plain =
                reduce_kernel_integral({KernelReduction::Kind::plain, 1, 0.0}, zeta, s, sch);
            const double expect = (c1 / c3) * std::pow(zeta, -1.0 - s.two_s());
            CHECK(plain == doctest::Approx(expect).epsilon(1e-6));
            const double quad = reduce_kernel_integral(
                {KernelReduction::Kind::quadratic_moment, 1, 0.0}, zeta, s, sch);
            CHECK(quad == doctest::Approx(expect / (3.0 + s.two_s())).epsilon(1e-6));
        }
    }
}

TEST_CASE("kernel reduction specific numbers at s=0.75, zeta=2") {
    const FracOrder s(0.75);
    QuadratureScheme sch;
    const double c1 = normalization_constant(1, s).value;
    const double c3 = normalization_constant(3, s).value;
    const double plain =
        reduce_kernel_integral({KernelReduction::Kind::plain, 1, 0.0}, 2.0, s, sch);
    CHECK(plain == doctest::Approx((c1 / c3) * std::pow(2.0, -2.5)).epsilon(1e-6));
    const double q1 = reduce_kernel_integral(
        {KernelReduction::Kind::quadratic_moment, 1, 0.0}, 2.0, s, sch);
    const double q2 = reduce_kernel_integral(
        {KernelReduction::Kind::quadratic_moment, 2, 0.0}, 2.0, s, sch);
    CHECK(q1 == doctest::Approx(plain / 4.5).epsilon(1e-6));
    CHECK(std::abs(q1 - q2) <= 1e-10 * std::abs(q1));
}

TEST_CASE("plain reduction scaled by |zeta|^{1+2s} is constant in zeta") {
    const FracOrder s(0.7);
    QuadratureScheme sch;
    double ref = 0.0;
    for (double zeta : {0.5, 1.0, 2.0, 4.0}) {
        const double v =
            reduce_kernel_integral({KernelReduction::Kind::plain, 1, 0.0}, zeta, s, sch) *
            std::pow(zeta, 1.0 + s.two_s());
        if (ref == 0.0)
            ref = v;
        else
            CHECK(v == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("kernel reduction rejections") {
    QuadratureScheme sch;
    CHECK_THROWS_AS(
        reduce_kernel_integral({KernelReduction::Kind::plain, 1, 0.0}, 0.0, FracOrder(0.75), sch),
        std::invalid_argument);
    CHECK_THROWS_AS(reduce_kernel_integral({KernelReduction::Kind::alpha_moment, 1, 0.9}, 1.0,
                                           FracOrder(0.75), sch),
                    std::invalid_argument);
    CHECK_NOTHROW(reduce_kernel_integral({KernelReduction::Kind::alpha_moment, 1, 0.3}, 1.0,
                                         FracOrder(0.75), sch));
}

TEST_CASE("alpha moment scales like |zeta|^{alpha-1-2s}") {
    const FracOrder s(0.8);
    QuadratureScheme sch;
    const double alpha = 0.4;
    const double v1 = reduce_kernel_integral({KernelReduction::Kind::alpha_moment, 1, alpha},
                                             1.0, s, sch);
    const double v2 = reduce_kernel_integral({KernelReduction::Kind::alpha_moment, 1, alpha},
                                             2.0, s, sch);
    CHECK(v1 / v2 == doctest::Approx(std::pow(2.0, 1.0 + s.two_s() - alpha)).epsilon(1e-6));
}

TEST_CASE("scheme validation") {
    QuadratureScheme sch;
    sch.excision_radius = -1.0;
    CHECK_THROWS_AS(sch.validate(), std::invalid_argument);
    sch = QuadratureScheme{};
    sch.node_budget = 8;
    CHECK_THROWS_AS(sch.validate(), std::invalid_argument);
}
