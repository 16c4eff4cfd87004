#pragma once

#include "fraccat/constants.hpp"
#include "fraccat/sampled.hpp"

#include <stdexcept>

namespace fraccat {

/// Graded-grid principal-value quadrature specification.
struct QuadratureScheme {
    double excision_radius = 1e-5; // radius dropped around the singularity
    double grading_exponent = 1.5; // clustering strength of graded sub-panels
    double truncation_radius = 1e3;

    enum class TailKind { none, algebraic };
    TailKind tail_kind = TailKind::algebraic;
    double tail_power = 0.0; // 0 => take the profile's own tail power

    int node_budget = 64; // scales all panel counts

    void validate() const {
        if (!(excision_radius > 0.0))
            throw std::invalid_argument("QuadratureScheme: excision_radius must be > 0");
        if (!(truncation_radius > excision_radius))
            throw std::invalid_argument("QuadratureScheme: truncation <= excision");
        if (node_budget < 16)
            throw std::invalid_argument("QuadratureScheme: node_budget must be >= 16");
    }

    QuadratureScheme refined(int factor = 2) const {
        QuadratureScheme r = *this;
        r.node_budget *= factor;
        r.excision_radius /= factor;
        return r;
    }
};

/// (-Δ)^s f(z0) = C_{1,s} PV ∫ (f(z0)-f(z)) |z0-z|^{-1-2s} dz.
///
/// Symmetric excision with second-order Taylor subtraction on the unit
/// window around z0, spline panels to the grid edge, tail-model panels to
/// the truncation radius and an analytic algebraic closure beyond.
double frac_laplacian_1d(const Sampled1D& f, double z0, FracOrder s,
                         const QuadratureScheme& scheme);

/// Two-scheme refinement check; throws NonConvergence when the coarse and
/// refined evaluations disagree by more than tol (relative where sensible).
double frac_laplacian_1d_checked(const Sampled1D& f, double z0, FracOrder s,
                                 const QuadratureScheme& scheme, double tol);

/// In-window part of the flat 3D operator, reduced over the disc |y| <= R1:
///   C_{1,s} ∫_{|z|<=R1} (f(z0)-f(z)) [ |z0-z|^{-1-2s} - (R1^2+(z0-z)^2)^{-(1+2s)/2} ] dz.
/// Subtracting it from the full 1D operator gives the flat exterior closure
/// of a cylinder-windowed 3D evaluation.
double frac1d_window_flat(const Sampled1D& f, double z0, FracOrder s, double R1,
                          const QuadratureScheme& scheme);

/// Kernel-reduction integrals over y in R^2 (radially reduced to 1D):
///   plain:               ∫ |(y,ζ)|^{-(3+2s)} dy        = (C_{1,s}/C_{3,s}) |ζ|^{-1-2s}
///   quadratic_moment(i): ∫ y_i^2 |(y,ζ)|^{-(5+2s)} dy  = plain / (3+2s)
///   alpha_moment(α):     ∫ |y|^α |(y,ζ)|^{-(3+2s)} dy,  0 < α < 2s-1
struct KernelReduction {
    enum class Kind { plain, quadratic_moment, alpha_moment };
    Kind kind = Kind::plain;
    int moment_axis = 1;  // 1 or 2, for quadratic_moment
    double alpha = 0.0;   // for alpha_moment
};

double reduce_kernel_integral(const KernelReduction& kind, double zeta, FracOrder s,
                              const QuadratureScheme& scheme);

} // namespace fraccat
