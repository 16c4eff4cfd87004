#pragma once

#include "fraccat/cutoffs.hpp"
#include "fraccat/layer.hpp"
#include "fraccat/radial.hpp"

#include <Eigen/Dense>

#include <optional>

namespace fraccat {

/// Principal curvatures of the revolution graph x3 = F(|x'|) with respect to
/// the upward normal, and the mean curvature H = (k1+k2)/2.
struct CurvatureData {
    double kappa1; // meridian: F'' / (1+F'^2)^{3/2}
    double kappa2; // parallel: F' / (r sqrt(1+F'^2))
    double H;
    double holder_bound; // local Lipschitz proxy for ||kappa||_alpha
};

CurvatureData curvatures(const RadialFn& F, double r);

/// Divergence-form curvature (1/r) (r F' / sqrt(1+F'^2))' = k1 + k2 = 2H.
double mean_curvature_divform(const RadialFn& F, double r);

/// Neck-parameterized expression (G'/sqrt(1+G'^2))' - 1/(G sqrt(1+G'^2))
/// evaluated from pointwise values; rejects G <= 0.
double neck_mean_curvature(double G, double G1, double G2);
double neck_mean_curvature(const CubicSpline& G, double z);

/// Neck branch r = G_unit(xi) of a generating curve, unscaled (G_unit(0) = 1).
struct NeckFn {
    std::function<double(double)> g, g1, g2;
    double xi_max; // hand-off height, F(r_hand)
};

/// Rotationally symmetric interface M_eps^+ = { x3 = F_eps(|x'|) } with an
/// optional neck branch closing the curve down to the waist. All profile
/// inputs are unscaled (paper scale); evaluation is at the eps^{-1} scale.
class FermiChart {
public:
    enum class Leaf { upper, lower };

    FermiChart(RadialFn F, double eps, double delta_bar = 0.1, Leaf leaf = Leaf::upper);

    /// Catenoid chart: F = f_C with the cosh neck attached.
    static FermiChart catenoid(double eps, double delta_bar = 0.1);

    void set_neck(NeckFn neck);
    bool has_neck() const { return neck_.has_value(); }

    double eps() const { return eps_; }
    double leaf_sign() const { return leaf_ == Leaf::upper ? 1.0 : -1.0; }
    double tube_halfwidth() const { return 8.0 * delta_bar_ / eps_; }
    double delta_bar() const { return delta_bar_; }
    double r_hand() const { return r_hand_; } // unscaled 45-degree hand-off radius
    double waist_radius() const;              // eps^{-1} scale; needs the neck

    double F_eps(double r) const { return F_(eps_ * r) / eps_; }
    double dF_eps(double r) const { return F_.d1(eps_ * r); }
    double ddF_eps(double r) const { return eps_ * F_.d2(eps_ * r); }
    double r_min_eps() const { return F_.r_min() / eps_; }

    CurvatureData curvatures_at(double r) const; // of M_eps at base radius r

    /// Nearest point on the generating half-curve (graph plus neck) to the
    /// half-plane point (rho, xi); z signed along the continuous normal
    /// (pointing up over the graph, toward the axis at the waist).
    struct Nearest {
        double r;       // base radius of the projection
        double xi;      // base height
        double z;       // signed distance
        bool on_neck;
        Eigen::Vector2d normal; // (radial, vertical) components
    };
    Nearest nearest(double rho, double xi) const;

    struct FermiCoords {
        Eigen::Vector3d y_proj;
        double z;
        double r_base;
    };
    /// Throws OutOfTube if |z| exceeds the tube halfwidth or the projection
    /// is azimuthally degenerate (on-axis query).
    FermiCoords fermi_coordinates(const Eigen::Vector3d& x) const;

    /// Curvature factor (1 - k1 z)(1 - k2 z) of the Fermi volume element at
    /// base radius r; throws on a degenerate tube.
    double curvature_jacobian(double r, double z) const;

    /// Surface point and unit normal at (base radius r, azimuth theta).
    Eigen::Vector3d surface_point(double r, double theta) const;
    Eigen::Vector3d unit_normal(double r, double theta) const;

private:
    RadialFn F_;
    double eps_;
    double delta_bar_;
    Leaf leaf_;
    std::optional<NeckFn> neck_;
    double r_hand_ = 0.0;  // unscaled
    double xi_hand_ = 0.0; // unscaled
};

/// Tangent-graph chart of the surface at base radius r0 (azimuth 0): the
/// meridian/parallel frame diagonalizes the second fundamental form, and the
/// surface is the graph x3' = g(y) over the tangent plane.
class TangentChart {
public:
    TangentChart(const FermiChart& chart, double r0);

    const Eigen::Vector3d& base() const { return p0_; }
    const Eigen::Vector3d& e1() const { return e1_; } // meridian
    const Eigen::Vector3d& e2() const { return e2_; } // parallel
    const Eigen::Vector3d& normal0() const { return nu0_; }
    double kappa1() const { return k1_; }
    double kappa2() const { return k2_; }

    struct ChartPoint {
        Eigen::Vector3d X; // surface point
        double g;          // height over the tangent plane
        double r;          // base radius of X
        double theta;
    };
    ChartPoint solve(double y1, double y2) const;

    double g(double y1, double y2) const { return solve(y1, y2).g; }
    Eigen::Vector2d Dg(double y1, double y2) const;
    /// (kappa1, kappa2) at the chart point displaced y1 along the meridian.
    std::pair<double, double> curvatures_at_offset(double y1) const;
    Eigen::Vector3d surface_normal(double y1, double y2) const;

    /// Fermi map of the chart: surface point at y plus z along its normal.
    Eigen::Vector3d Phi(double y1, double y2, double z) const;

    /// sqrt(1+|Dg|^2) (1 - k1(y) z)(1 - k2(y) z) with curvatures at the
    /// chart point.
    double jacobian(double y1, double y2, double z) const;

private:
    const FermiChart* chart_;
    double r0_;
    Eigen::Vector3d p0_, e1_, e2_, nu0_;
    double k1_, k2_;
};

/// Two-term kernel expansion diagnostic around a chart base point.
struct KernelExpansion {
    double exact;    // |Phi(0,z0) - Phi(y,z)|^{-3-2s}
    double expanded; // flat kernel times the curvature correction bracket
    double bound;    // stated remainder majorant times the flat kernel
};

KernelExpansion kernel_expansion_check(const TangentChart& chart, double z0, double z,
                                       const Eigen::Vector2d& y, FracOrder s, double alpha);

/// Assembled two-leaf approximate solution.
struct ApproxSolutionSpec {
    double R_bar = 10.0;
    double tau = 1.30;
    double alpha_curv = 0.49;
};

class ApproxSolution {
public:
    ApproxSolution(FermiChart upper_chart, LayerProfile profile, CutoffPair cutoffs,
                   ApproxSolutionSpec spec = {});

    double operator()(const Eigen::Vector3d& x) const;
    double eval_halfplane(double rho, double xi) const; // u* at |x'| = rho, x3 = xi

    double R0(double rho) const; // tube-width function, >= 1
    double R1(double rho) const; // kernel-window radius function
    double outer_state(double rho, double xi) const; // u*_o

    const FermiChart& chart() const { return chart_; }
    const LayerProfile& layer() const { return layer_; }
    const Sampled1D& w() const { return w_; }
    const ApproxSolutionSpec& spec() const { return spec_; }
    double eps() const { return chart_.eps(); }

    /// Signed distances to the upper/lower leaves (z- via the mirror chart).
    double z_plus(double rho, double xi) const;
    double z_minus(double rho, double xi) const { return z_plus(rho, -xi); }

private:
    FermiChart chart_;
    LayerProfile layer_;
    Sampled1D w_;
    CutoffPair cut_;
    ApproxSolutionSpec spec_;
};

} // namespace fraccat
