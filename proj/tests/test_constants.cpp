#include "doctest.h"

#include "fraccat/constants.hpp"

#include <cmath>

using namespace fraccat;

TEST_CASE("half-Laplacian constant in 1D is 1/pi") {
    const auto c = normalization_constant(1, FracOrder(0.5));
    CHECK(c.value == doctest::Approx(1.0 / 3.14159265358979323846).epsilon(1e-12));
}

TEST_CASE("the two closed forms agree across the s grid") {
    for (double s = 0.55; s < 0.96; s += 0.05) {
        for (int n : {1, 3, 5}) {
            const double a = normalization_constant(n, FracOrder(s)).value;
            const double b = normalization_constant_alt(n, FracOrder(s));
            CHECK(std::abs(a / b - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("forms agree near the s -> 1 cancellation") {
    const double a = normalization_constant(1, FracOrder(0.99)).value;
    const double b = normalization_constant_alt(1, FracOrder(0.99));
    CHECK(std::abs(a / b - 1.0) < 1e-12);
    CHECK(a > 0.0);
    CHECK(std::isfinite(a));
}

TEST_CASE("Gamma-ratio identity 1 - C3^2/(C1 C5) = 2/(3+2s)") {
    for (double s = 0.55; s < 0.96; s += 0.05) {
        const double lhs = kernel_moment_identity(FracOrder(s));
        const double rhs = 2.0 / (3.0 + 2.0 * s);
        CHECK(std::abs(lhs / rhs - 1.0) < 1e-12);
    }
    CHECK(kernel_moment_identity(FracOrder(0.75)) ==
          doctest::Approx(4.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(FracOrder(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FracOrder(1.0), std::invalid_argument);
    CHECK_THROWS_AS(FracOrder(1.2), std::invalid_argument);
    CHECK_THROWS_AS(normalization_constant(0, FracOrder(0.75)), std::invalid_argument);
    CHECK_THROWS_AS(FracOrder(0.5).require_pipeline(), std::invalid_argument);
    CHECK_NOTHROW(FracOrder(0.51).require_pipeline());
}
