#pragma once

#include "fraccat/constants.hpp"
#include "fraccat/cutoffs.hpp"
#include "fraccat/radial.hpp"
#include "fraccat/spline.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fraccat {

/// Sub-linear weighted norms of eq-type profiles:
///   ||phi||_* : sup r^{g-2}|phi| + sup r^{g-1}|phi'| + sup r^g|phi''| + Hoelder tail
///   ||h||_**  : sup r^g|h| + Hoelder tail
struct WeightedNormSpec {
    double gamma = 2.0;
    double alpha = 0.5;
    double domain_start = 1.0;

    void validate(FracOrder s) const {
        const double lim = 2.0 + (s.two_s() - 1.0) / (s.two_s() + 1.0);
        if (!(gamma <= lim))
            throw std::invalid_argument("WeightedNormSpec: gamma exceeds 2+(2s-1)/(2s+1)");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("WeightedNormSpec: alpha must lie in (0,1)");
    }
};

/// Profile with two derivatives on a radial grid (the working object of the
/// reduced pipeline; exported as the spec's RadialProfile).
struct GridFunction {
    std::vector<double> r;
    std::vector<double> f, f1, f2;

    std::size_t size() const { return r.size(); }
};

double norm_star(const GridFunction& phi, const WeightedNormSpec& spec);
double norm_star_star_values(const std::vector<double>& r, const std::vector<double>& h,
                             const WeightedNormSpec& spec);

/// Emden-Fowler state of h'' + 2h' + h = c0 h^{-2s}.
struct EmdenFowlerState {
    double t;
    double h;
    double h_prime;
    double hamiltonian;
};

double emden_fowler_hamiltonian(FracOrder s, double h, double hp);

struct EmdenFowlerOptions {
    double c0 = 1.0; // forcing coefficient (equilibrium at c0^{1/(2s+1)})
    double dt_record = 0.05;
    double rtol = 1e-10;
};

std::vector<EmdenFowlerState> emden_fowler_flow(FracOrder s, const EmdenFowlerState& initial,
                                                double t_max, const EmdenFowlerOptions& opts = {});

/// Cauchy continuation of the far-field ODE f'' + f'/r = c0 eps^{2s-1} f^{-2s}
/// from r_eps with catenoid data; records on a geometric output grid.
struct FEpsResult {
    double r_eps;
    GridFunction profile;  // on [r_eps, r_max]
    double tail_A;         // f ~ A r^{2/(2s+1)} (+ lower order)
    double lemma_near_max_f_over_logeps;  // sup of f / |log eps| on [r_eps, |log eps| r_eps]
    double lemma_near_min_f_over_logeps;
    double lemma_near_max_fp_times_reps;  // sup of f' r_eps on the same window
};

FEpsResult continue_f_eps(FracOrder s, double eps, double r_max, double tol, double c0 = 1.0);

double r_eps_of(FracOrder s, double eps);

/// Blended initial approximation F0 = f_C + chi(r - r_eps)(f_eps - f_C) as an
/// evaluable profile on [1, r_max] (exact f_C inner branch, spline outer).
class F0Profile {
public:
    F0Profile(FracOrder s, double eps, const CutoffPair& cutoffs, double r_max, double tol,
              double c0 = 1.0);

    double operator()(double r) const;
    double d1(double r) const;
    double d2(double r) const;

    double r_eps() const { return r_eps_; }
    double r_max() const { return r_max_; }
    double tail_A() const { return tail_A_; }
    double eps() const { return eps_; }
    double c0() const { return c0_; }
    FracOrder s() const { return s_; }
    RadialFn as_radial_fn() const;

private:
    FracOrder s_;
    double eps_, c0_, r_eps_, r_max_, tail_A_;
    CutoffPair cut_;
    CubicSpline fe_, fe1_, fe2_; // f_eps branch on [r_eps*0.98, r_max]
};

/// chi_eps ramp: 0 for r <= r_eps, 1 for r >= rtilde_eps = K r_eps with
/// K = max(delta0 |log eps|, K_min); K_min keeps the ordering at desk-scale
/// eps where delta0 |log eps| < 1.
struct ChiEps {
    double r_eps;
    double r_tilde;
    CutoffPair cut;

    double operator()(double r) const { return cut.chi((r - r_eps) / (r_tilde - r_eps)); }
    double d1(double r) const {
        return cut.chi_d1((r - r_eps) / (r_tilde - r_eps)) / (r_tilde - r_eps);
    }
};

ChiEps make_chi_eps(FracOrder s, double eps, double delta0 = 0.1, double K_min = 3.0);

/// Linearized operator of the reduced equation at F0:
///   (1-chi_eps) (1/r)(r phi' /(1+F0'^2)^{3/2})'
///   + chi_eps (phi'' + phi'/r + 2s c0 eps^{2s-1} F0^{-(2s+1)} phi).
double L0_apply_point(double r, double phi, double phi1, double phi2, const F0Profile& F0,
                      const ChiEps& chi);
GridFunction L0_apply(const GridFunction& phi, const F0Profile& F0, const ChiEps& chi);

/// Kernels of the far linearized equation at the Emden-Fowler scale:
/// Z'' + Z'/r + 2s g^{-(2s+1)} Z = 0 where g solves g'' + g'/r = g^{-2s}.
struct FarKernels {
    CubicSpline g, g1;      // the unit-scale Emden-Fowler solution
    CubicSpline Z1, Z1p;    // scaling kernel r g' - (2/(2s+1)) g
    CubicSpline Z2, Z2p;    // Wronskian partner, r W = 1
    double delta0;
    double rho_min, rho_max;

    double wronskian(double rho) const {
        return Z1.eval(rho) * Z2p.eval(rho) - Z1p.eval(rho) * Z2.eval(rho);
    }
};

/// Integrates the unit-scale Emden-Fowler problem for the given eps (initial
/// data at 1/|log eps| per the rescaled Cauchy problem) and builds Z1, Z2.
FarKernels build_far_kernels(FracOrder s, double eps, double delta0, double rho_max,
                             double tol = 1e-11);

/// Scaling kernel value at the unit scale.
double kernel_Z1_value(const FarKernels& k, double rho);

/// Context shared by the right inverse and the fixed point.
struct ReducedContext {
    FracOrder s;
    double eps;
    double c0;        // far forcing coefficient (C_bar0 in the pipeline)
    double r1;        // domain start, sqrt(2)
    F0Profile F0;
    ChiEps chi;
    FarKernels kernels;
    double R_out;     // outer grid end
    double kernel_scale; // Z_i(r) = Ztilde_i(r / kernel_scale)

    double rtilde() const { return chi.r_tilde; }
};

ReducedContext make_reduced_context(FracOrder s, double eps, double c0, double R_out,
                                    double delta0 = 0.1, double K_min = 3.0);

/// Right inverse T of L0 with phi(r1) = 0, phi'(r1) = 0: variation of
/// parameters on the inner branch, iterated double integral on the ramp,
/// Z1/Z2 variation of parameters outside, value/slope matching at rtilde.
GridFunction right_inverse_T(const std::function<double(double)>& h, const ReducedContext& ctx);

/// Measured bound constant of T on a datum h: ||T(h)||_* / ||h||_**.
double measured_T_bound(const std::function<double(double)>& h, const ReducedContext& ctx,
                        const WeightedNormSpec& norms);

/// Reduced-equation solve: neck ODE from (G(0)=1, G'(0)=0) to the hand-off,
/// fixed point phi = T(A[phi]) on the graph branch.
struct NeckProfile {
    std::vector<double> z;
    std::vector<double> G, G1;
    double z1;       // hand-off height, F(r1)
    double r1;       // = G(z1)
    double G1_at_z1; // slope at the hand-off
};

struct PluggableForcing {
    // N1 on the graph/mid branch and N2 on the far branch; zero by default
    // (the explicit C_bar0 eps^{2s-1} F^{-2s} term lives in the operator).
    std::function<double(double)> N_mid;  // of r
    std::function<double(double)> N_far;  // of r
};

struct SolveReducedOptions {
    double tol = 1e-9;
    int max_iter = 25;
    double R_out_factor = 200.0; // R_out = factor * rtilde
    double delta0 = 0.1;
    double K_min = 3.0;
    PluggableForcing forcing;
};

struct SolveReducedResult {
    NeckProfile neck;
    GridFunction F;        // the solved profile on [r1, R_out]
    GridFunction phi;      // correction F - F0
    ReducedContext ctx;
    double contraction_rate;
    double phi_norm_star;
    double far_tail_slope; // log-log slope of F on [10 rtilde, 100 rtilde]
    double mid_residual;   // sup |H_rev[F] - N_mid| on [r1, 4 R_bar]
    double far_residual;   // sup |(F''+F'/r - c0 eps^{2s-1} F^{-2s} - N_far)| / forcing scale
    double matching_gap;   // |F'(r1) G'(z1) - 1|
};

SolveReducedResult solve_reduced(FracOrder s, double eps, const CutoffPair& cutoffs,
                                 double C_bar, double C_bar_pm,
                                 const SolveReducedOptions& opts = {});

} // namespace fraccat
