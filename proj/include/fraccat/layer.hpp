#pragma once

#include "fraccat/constants.hpp"
#include "fraccat/cutoffs.hpp"
#include "fraccat/quadrature.hpp"
#include "fraccat/sampled.hpp"

#include <vector>

namespace fraccat {

/// The increasing 1D heteroclinic layer w of (-d_zz)^s w + w^3 - w = 0,
/// sampled on a symmetric graded grid, with its algebraic tail metadata.
struct LayerProfile {
    FracOrder s;
    std::vector<double> grid;         // symmetric, includes 0
    std::vector<double> values;       // w, odd, increasing, |w|<1
    std::vector<double> deriv_values; // w' > 0
    double c_w = 0.0;                 // 1-w(z) ~ c_w z^{-2s}
    double tail_exponent_fit = 0.0;   // free-exponent fit, should be ~2s
    double residual_sup = 0.0;        // sup-norm PDE residual at the nodes

    double Z_max() const { return grid.back(); }
    int node_count() const { return static_cast<int>(grid.size()); }

    /// Spline + algebraic-tail view used by all quadratures.
    Sampled1D sampled() const;
    /// Quadrature scheme with the profile's own tail model.
    QuadratureScheme scheme() const;
};

struct SolveLayerOptions {
    bool continuation = false;      // ladder down from s = 0.95
    double grid_grading = 2.0;      // node clustering exponent at the origin
    int max_newton = 40;
    int max_polish = 12;            // defect-correction sweeps against frac_laplacian_1d
    double polish_target = 1e-8;    // node-residual goal of the polish stage
};

/// Solve for the layer profile. Preconditions per contract:
/// Z_max >= 50, node_count >= 400, tol >= 1e-10.
LayerProfile solve_layer(FracOrder s, double Z_max, int node_count, double tol,
                         const SolveLayerOptions& opts = {});

/// PDE residual (-d_zz)^s w(z) + w(z)^3 - w(z) under a given scheme.
double layer_residual(const LayerProfile& profile, double z, const QuadratureScheme& scheme);

/// Curvature weight c_H(z0) = C_{1,s} ∫ (w(z0)-w(z))(z0-z)|z0-z|^{-1-2s} dz.
double c_H(double z0, const LayerProfile& profile, const QuadratureScheme& scheme);

/// Alternative representation (C_{1,s}/(2s-1)) ∫ w'(z) |z0-z|^{-(2s-1)} dz.
double c_H_alt(double z0, const LayerProfile& profile, const QuadratureScheme& scheme);

struct ProjectionConstants {
    double C_bar;        // ∫ c_H ζ w' dz
    double C_bar_pm;     // 3 c_w ∫ (1-w^2) ζ w' dz
    double inner_weight; // ∫ (1-w^2) ζ w' dz, for cross-checks
    double R_zeta;
};

ProjectionConstants projection_constants(const LayerProfile& profile, const CutoffPair& cutoffs,
                                         double R_zeta);

/// Leading far interaction 3 (w(z+)+w(z-)) (1+w(z+)) (1+w(z-)).
double far_interaction(const LayerProfile& profile, double z_plus, double z_minus);

} // namespace fraccat
