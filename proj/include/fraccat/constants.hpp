#pragma once

#include <cmath>
#include <stdexcept>

namespace fraccat {

/// Fractional order s of the operator (-Δ)^s.
///
/// The constant formulas are valid for s in (0,1); the interface pipeline
/// additionally needs s > 1/2 (curvature projection and tail integrals
/// diverge otherwise). Use require_pipeline() at entry points that do.
struct FracOrder {
    double s;

    explicit FracOrder(double s_) : s(s_) {
        if (!(s > 0.0 && s < 1.0))
            throw std::invalid_argument("FracOrder: s must lie in (0,1)");
    }

    double two_s() const { return 2.0 * s; }

    void require_pipeline() const {
        if (!(s > 0.5))
            throw std::invalid_argument("FracOrder: pipeline operations need s in (1/2,1)");
    }
};

/// Normalization constant C_{n,s} of the singular-integral fractional Laplacian.
struct NormalizationConstant {
    int n;
    double s;
    double value;
};

/// C_{n,s} = 2^{2s} s (1-s) Gamma((n+2s)/2) / (Gamma(2-s) pi^{n/2}).
NormalizationConstant normalization_constant(int n, FracOrder s);

/// Same constant via the Gamma(1-s) form; equal to the canonical one
/// since (1-s)Gamma(1-s) = Gamma(2-s). Kept as a cross-check.
double normalization_constant_alt(int n, FracOrder s);

/// 1 - C_{3,s}^2 / (C_{1,s} C_{5,s}); closed form 2/(3+2s).
double kernel_moment_identity(FracOrder s);

} // namespace fraccat
