#include "fraccat/layer.hpp"

#include "fraccat/errors.hpp"
#include "fraccat/panels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fraccat {

namespace {

// Collocation operator for PV ∫ (w(z_i)-w(z)) |z_i-z|^{-1-2s} dz (without the
// C_{1,s} factor) on the symmetric graded grid, with w represented piecewise
// linearly away from the collocation point, by a local parabola through the
// three nodes around it (a kink at the singularity has no principal value
// when s > 1/2), and by the algebraic tail model beyond the grid.
//
// Unknowns are w at the positive interior nodes z_1..z_{M-1}; w(0) = 0 and
// w(-z) = -w(z) are built in, and the boundary value is eliminated through
// the tail model: w_M = 1 - (1 - w_{M-1}) (Z/z_{M-1})^{-2s}.
struct CollocationOperator {
    Eigen::MatrixXd A; // (M-1) x (M-1)
    Eigen::VectorXd b;
    std::vector<double> zpos; // z_1..z_M
    double two_s;
    double boundary_ratio; // (Z/z_{M-1})^{-2s}

    int unknowns() const { return static_cast<int>(A.rows()); }

    double boundary_value(const Eigen::VectorXd& w) const {
        return 1.0 - (1.0 - w[unknowns() - 1]) * boundary_ratio;
    }
};

CollocationOperator assemble_operator(const std::vector<double>& grid, double two_s) {
    const int n = static_cast<int>(grid.size());
    const int M = (n - 1) / 2;
    const int U = M - 1;
    CollocationOperator op;
    op.two_s = two_s;
    op.zpos.assign(grid.begin() + M + 1, grid.end());
    const double Z = grid.back();
    const double zb = op.zpos[M - 2]; // z_{M-1}
    op.boundary_ratio = std::pow(Z / zb, -two_s);
    op.A = Eigen::MatrixXd::Zero(U, U);
    op.b = Eigen::VectorXd::Zero(U);

    // add(coeff, j): j is the signed node index (-M..M); resolves oddness,
    // the fixed origin and the eliminated boundary node.
    auto add_at = [&](int row, double coeff, int j) {
        if (j == 0) return;
        const double sgn = j > 0 ? 1.0 : -1.0;
        const int k = std::abs(j);
        if (k < M) {
            op.A(row, k - 1) += sgn * coeff;
        } else { // k == M: w_M = 1 - (1 - w_{M-1}) * ratio
            op.b[row] += sgn * coeff * (1.0 - op.boundary_ratio);
            op.A(row, U - 1) += sgn * coeff * op.boundary_ratio;
        }
    };

    const double T_far = 1e8; // switch point to the series closure

    for (int i = 1; i <= U; ++i) {
        const int row = i - 1;
        const double zi = op.zpos[i - 1];
        const double hm = grid[M + i] - grid[M + i - 1];
        const double hp = grid[M + i + 1] - grid[M + i];

        // Local parabola through (z_{i-1}, z_i, z_{i+1}):
        //  PV of the linear part and the exact quadratic moment.
        {
            const double denom = hp * hm * (hp + hm);
            const double m1 = (std::pow(hp, 1.0 - two_s) - std::pow(hm, 1.0 - two_s)) /
                              (1.0 - two_s);
            const double m2 = (std::pow(hp, 2.0 - two_s) + std::pow(hm, 2.0 - two_s)) /
                              (2.0 - two_s);
            // b-coefficient of the parabola: (hm^2 w_{i+1} - hp^2 w_{i-1} + (hp^2-hm^2) w_i)/denom
            // c-coefficient: (hm w_{i+1} + hp w_{i-1} - (hp+hm) w_i)/denom
            // contribution: -b*m1 - c*m2
            add_at(row, -(hm * hm * m1 + hm * m2) / denom, i + 1);
            add_at(row, -(-hp * hp * m1 + hp * m2) / denom, i - 1);
            add_at(row, -((hp * hp - hm * hm) * m1 - (hp + hm) * m2) / denom, i);
        }

        // Remaining grid cells, piecewise linear.
        for (int j = -M; j < M; ++j) {
            if (j == i || j + 1 == i) continue; // covered by the parabola
            const double xl = grid[M + j], xr = grid[M + j + 1];
            const double h = xr - xl;
            double m0, mlin;
            if (xl >= zi) { // cell to the right
                const double ul = xl - zi, ur = xr - zi;
                const double I1 = (std::pow(ul, -two_s) - std::pow(ur, -two_s)) / two_s;
                const double I2 = (std::pow(ul, 1.0 - two_s) - std::pow(ur, 1.0 - two_s)) /
                                  (two_s - 1.0);
                m0 = I1;
                mlin = I2 - ul * I1;
            } else { // cell to the left
                const double vl = zi - xr, vr = zi - xl;
                const double I1 = (std::pow(vl, -two_s) - std::pow(vr, -two_s)) / two_s;
                const double I2 = (std::pow(vl, 1.0 - two_s) - std::pow(vr, 1.0 - two_s)) /
                                  (two_s - 1.0);
                m0 = I1;
                mlin = vr * I1 - I2;
            }
            add_at(row, m0, i);
            add_at(row, -m0 + mlin / h, j);
            add_at(row, -mlin / h, j + 1);
        }

        // Right tail [Z, inf): w = 1 - c_w z^{-2s}, c_w = (1-w_{M-1}) zb^{2s}.
        {
            const double k0 = std::pow(Z - zi, -two_s) / two_s; // ∫_Z^∞ K
            add_at(row, k0, i);
            op.b[row] -= k0;
            auto g = [&](double z) {
                return std::pow(z, -two_s) * std::pow(z - zi, -1.0 - two_s);
            };
            double J = integrate_ladder(g, Z, T_far, 72) +
                       algebraic_tail_series(T_far, zi, two_s, 1.0 + two_s);
            const double cw_of_w = std::pow(zb, two_s); // c_w = (1-w_{M-1}) * this
            op.b[row] += cw_of_w * J;
            op.A(row, U - 1) -= cw_of_w * J;
        }
        // Left tail (-inf, -Z]: w = -1 + c_w |z|^{-2s}.
        {
            const double k0 = std::pow(Z + zi, -two_s) / two_s;
            add_at(row, k0, i);
            op.b[row] += k0;
            auto g = [&](double v) {
                return std::pow(v, -two_s) * std::pow(v + zi, -1.0 - two_s);
            };
            double J = integrate_ladder(g, Z, T_far, 72) +
                       algebraic_tail_series(T_far, -zi, two_s, 1.0 + two_s);
            const double cw_of_w = std::pow(zb, two_s);
            op.b[row] -= cw_of_w * J;
            op.A(row, U - 1) += cw_of_w * J;
        }
    }
    return op;
}

Eigen::VectorXd initial_guess(const std::vector<double>& zpos, int U) {
    Eigen::VectorXd w(U);
    for (int i = 0; i < U; ++i) w[i] = std::tanh(zpos[i] / std::sqrt(2.0));
    return w;
}

struct FitResult {
    double c_w;
    double exponent;
    double band_error; // max relative deviation from the pinned-exponent model
};

FitResult fit_tail(const std::vector<double>& grid, const std::vector<double>& values,
                   double two_s, double fit_lo, double fit_hi, double band_lo,
                   double band_hi) {
    const double Z = grid.back();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    double pinned_log_c = 0;
    int pinned_cnt = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = grid[i];
        if (z < fit_lo * Z || z > fit_hi * Z) continue;
        const double d = 1.0 - values[i];
        if (!(d > 0.0)) continue;
        const double x = std::log(z), y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
        pinned_log_c += y + two_s * x;
        ++pinned_cnt;
    }
    if (cnt < 8) throw NonConvergence("solve_layer: too few nodes for the tail fit");
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    FitResult r;
    r.exponent = -slope;
    r.c_w = std::exp(pinned_log_c / pinned_cnt);
    r.band_error = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = grid[i];
        if (z < band_lo * Z || z > band_hi * Z) continue;
        const double model = r.c_w * std::pow(z, -two_s);
        r.band_error = std::max(r.band_error, std::abs(1.0 - values[i] - model) / model);
    }
    return r;
}

// Values on the solve grid, with a tail fit over a window clear of the
// outermost nodes (the boundary closure leaves a small sag there, which the
// trim margin in solve_layer discards from the returned profile).
LayerProfile make_profile(FracOrder s, const std::vector<double>& grid,
                          const CollocationOperator& op, const Eigen::VectorXd& w) {
    const int n = static_cast<int>(grid.size());
    const int M = (n - 1) / 2;
    const int U = M - 1;
    LayerProfile p{s, grid, {}, {}, 0.0, 0.0, 0.0};
    p.values.resize(n);
    p.values[M] = 0.0;
    for (int i = 1; i <= U; ++i) {
        p.values[M + i] = w[i - 1];
        p.values[M - i] = -w[i - 1];
    }
    p.values[n - 1] = op.boundary_value(w);
    p.values[0] = -p.values[n - 1];

    const auto fit = fit_tail(grid, p.values, s.two_s(), 0.45, 0.80, 0.45, 0.80);
    p.c_w = fit.c_w;
    p.tail_exponent_fit = fit.exponent;

    CubicSpline spl(grid, p.values);
    p.deriv_values.resize(n);
    for (int i = 0; i < n; ++i) p.deriv_values[i] = spl.deriv(grid[i]);
    return p;
}

// One accurate residual sweep: frac_laplacian_1d + w^3 - w at the positive
// interior nodes (odd symmetry covers the rest).
Eigen::VectorXd accurate_residual(const LayerProfile& p, const CollocationOperator& op,
                                  const QuadratureScheme& sch) {
    const Sampled1D f = p.sampled();
    const int U = op.unknowns();
    Eigen::VectorXd r(U);
    const FracOrder s = p.s;
    for (int i = 0; i < U; ++i) {
        const double z = op.zpos[i];
        const double wv = f(z);
        r[i] = frac_laplacian_1d(f, z, s, sch) + wv * wv * wv - wv;
    }
    return r;
}

LayerProfile solve_on_grid(FracOrder s, const std::vector<double>& grid, double tol,
                           const SolveLayerOptions& opts, Eigen::VectorXd* warm) {
    const double two_s = s.two_s();
    const double c1s = normalization_constant(1, s).value;
    CollocationOperator op = assemble_operator(grid, two_s);
    const int U = op.unknowns();

    Eigen::VectorXd w = (warm && warm->size() == U) ? *warm : initial_guess(op.zpos, U);

    auto residual = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        Eigen::VectorXd r = c1s * (op.A * v + op.b);
        for (int i = 0; i < U; ++i) r[i] += v[i] * v[i] * v[i] - v[i];
        return r;
    };

    // Stage A: Newton on the assembled collocation system.
    Eigen::VectorXd r = residual(w);
    double rn = r.lpNorm<Eigen::Infinity>();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::MatrixXd J(U, U);
    for (int it = 0; it < opts.max_newton && rn > 1e-12; ++it) {
        J = c1s * op.A;
        for (int i = 0; i < U; ++i) J(i, i) += 3.0 * w[i] * w[i] - 1.0;
        lu.compute(J);
        const Eigen::VectorXd dw = lu.solve(r);
        double step = 1.0;
        for (int ls = 0; ls < 8; ++ls) {
            Eigen::VectorXd wt = w - step * dw;
            Eigen::VectorXd rt = residual(wt);
            const double rtn = rt.lpNorm<Eigen::Infinity>();
            if (rtn < rn || step < 1.0 / 64) {
                w = std::move(wt);
                r = std::move(rt);
                rn = rtn;
                break;
            }
            step *= 0.5;
        }
    }
    if (!(rn < 1e-6))
        throw NonConvergence("solve_layer: Newton stage stalled at residual " +
                             std::to_string(rn));

    // Stage B: defect correction against the production quadrature so the
    // node residuals match the same oracle the contract is stated in.
    LayerProfile prof = make_profile(s, grid, op, w);
    QuadratureScheme sch = prof.scheme();
    J = c1s * op.A;
    for (int i = 0; i < U; ++i) J(i, i) += 3.0 * w[i] * w[i] - 1.0;
    lu.compute(J);
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_polish; ++it) {
        Eigen::VectorXd ra = accurate_residual(prof, op, sch);
        const double ran = ra.lpNorm<Eigen::Infinity>();
        if (ran < best) best = ran;
        if (ran < std::max(opts.polish_target, 0.1 * tol)) break;
        w -= lu.solve(ra);
        prof = make_profile(s, grid, op, w);
    }

    if (warm) *warm = w;
    return prof;
}

// Restrict the solve-grid profile to |z| <= Z_keep, refit the tail on the
// kept window and enforce the profile invariants there.
LayerProfile trim_profile(const LayerProfile& full, double Z_keep) {
    LayerProfile p{full.s, {}, {}, {}, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < full.grid.size(); ++i) {
        if (std::abs(full.grid[i]) <= Z_keep * (1.0 + 1e-12)) {
            p.grid.push_back(full.grid[i]);
            p.values.push_back(full.values[i]);
        }
    }
    const auto fit = fit_tail(p.grid, p.values, full.s.two_s(), 0.5, 1.0, 0.75, 1.0);
    p.c_w = fit.c_w;
    p.tail_exponent_fit = fit.exponent;
    if (std::abs(fit.exponent / full.s.two_s() - 1.0) > 0.05)
        throw NonConvergence("solve_layer: tail exponent fit off 2s by more than 5%");
    if (fit.band_error > 0.05)
        throw NonConvergence("solve_layer: tail band error above 5%");

    CubicSpline spl(p.grid, p.values);
    p.deriv_values.resize(p.grid.size());
    for (std::size_t i = 0; i < p.grid.size(); ++i) p.deriv_values[i] = spl.deriv(p.grid[i]);

    for (std::size_t i = 0; i + 1 < p.values.size(); ++i)
        if (!(p.values[i] < p.values[i + 1]))
            throw NonConvergence("solve_layer: profile not strictly increasing");
    if (!(std::abs(p.values.back()) < 1.0)) throw NonConvergence("solve_layer: |w| reached 1");

    const QuadratureScheme sch = p.scheme();
    const Sampled1D f = p.sampled();
    double sup = 0.0;
    for (std::size_t i = (p.grid.size() - 1) / 2; i < p.grid.size(); ++i) {
        const double z = p.grid[i];
        const double wv = f(z);
        sup = std::max(sup,
                       std::abs(frac_laplacian_1d(f, z, p.s, sch) + wv * wv * wv - wv));
    }
    p.residual_sup = sup;
    return p;
}

} // namespace

Sampled1D LayerProfile::sampled() const {
    AlgebraicTail t;
    t.power = s.two_s();
    t.coeff = c_w;
    t.limit_plus = 1.0;
    t.limit_minus = -1.0;
    return Sampled1D(grid, values, t);
}

QuadratureScheme LayerProfile::scheme() const {
    QuadratureScheme sch;
    sch.tail_kind = QuadratureScheme::TailKind::algebraic;
    return sch;
}

LayerProfile solve_layer(FracOrder s, double Z_max, int node_count, double tol,
                         const SolveLayerOptions& opts) {
    if (!(Z_max >= 50.0)) throw std::invalid_argument("solve_layer: Z_max must be >= 50");
    if (node_count < 400) throw std::invalid_argument("solve_layer: node_count must be >= 400");
    if (!(tol >= 1e-10)) throw std::invalid_argument("solve_layer: tol must be >= 1e-10");

    // Solve with a margin beyond Z_max and trim it: the boundary closure
    // leaves a small sag in the outermost nodes which must not contaminate
    // the returned tail window.
    const double Z_solve = 1.18 * Z_max;
    const double keep_frac = std::sqrt(Z_max / Z_solve); // power-2 grading
    int n = static_cast<int>(std::ceil(node_count / keep_frac)) | 1;
    const auto grid = graded_symmetric_grid(Z_solve, n, opts.grid_grading);

    if (!opts.continuation)
        return trim_profile(solve_on_grid(s, grid, tol, opts, nullptr), Z_max);

    Eigen::VectorXd warm;
    LayerProfile out = solve_on_grid(FracOrder(0.95), grid, tol, opts, &warm);
    for (double sc = 0.90; sc > s.s + 1e-9; sc -= 0.05)
        out = solve_on_grid(FracOrder(sc), grid, tol, opts, &warm);
    if (std::abs(s.s - 0.95) > 1e-9) out = solve_on_grid(s, grid, tol, opts, &warm);
    return trim_profile(out, Z_max);
}

double layer_residual(const LayerProfile& profile, double z, const QuadratureScheme& scheme) {
    const Sampled1D f = profile.sampled();
    const double wv = f(z);
    return frac_laplacian_1d(f, z, profile.s, scheme) + wv * wv * wv - wv;
}

namespace {

// Shared machinery for the two c_H representations.
double ch_form1(const Sampled1D& f, double z0, FracOrder s, const QuadratureScheme& sch) {
    sch.validate();
    const double two_s = s.two_s();
    const double f0 = f(z0), f1 = f.deriv(z0);
    const double zhi = f.z_max(), zlo = f.z_min();
    const double a = std::min(1.0, 0.25 * (zhi - zlo));
    const double r0 = std::min(sch.excision_radius, 0.25 * a);
    const int n_near = std::max(10, sch.node_budget / 4);

    // kernel (z0-z)|z0-z|^{-1-2s} = -u |u|^{-1-2s}, u = z-z0
    auto kern = [&](double u) { return -u * std::pow(std::abs(u), -1.0 - two_s); };
    auto reg = [&](double z) {
        const double u = z - z0;
        return (f0 - f(z) + f1 * u) * kern(u);
    };
    double acc = 0.0;
    acc += integrate_ladder([&](double d) { return reg(z0 + d); }, r0, a, n_near);
    acc += integrate_ladder([&](double d) { return reg(z0 - d); }, r0, a, n_near);
    acc += 2.0 * f1 * std::pow(a, 2.0 - two_s) / (2.0 - two_s); // ∫ (-f1 u)(-u)|u|^{-1-2s}

    auto plain = [&](double z) { return (f0 - f(z)) * kern(z - z0); };
    const auto& knots = f.spline().knots();
    acc += integrate_knotwise(plain, knots, z0 + a, zhi, z0);
    acc += integrate_knotwise(plain, knots, zlo, z0 - a, z0);

    // Tails: layer model ±(1 - c|z|^{-2s}).
    if (f.tail()) {
        const auto& t = *f.tail();
        const double T = sch.truncation_radius;
        const int n_far = std::max(24, sch.node_budget / 2);
        auto model_hi = [&](double z) { return (f0 - f(z)) * kern(z - z0); };
        acc += integrate_ladder(model_hi, std::max(zhi, z0 + a), T, n_far);
        acc -= (f0 - t.limit_plus) * std::pow(T - z0, 1.0 - two_s) / (two_s - 1.0);
        acc -= f.tail_coeff_plus() * algebraic_tail_series(T, z0, t.power, two_s);
        auto model_lo = [&](double v) { return (f0 - f(-v)) * kern(-v - z0); }; // z = -v
        acc += integrate_ladder(model_lo, std::max(-zlo, a - z0), T, n_far);
        acc += (f0 - t.limit_minus) * std::pow(T + z0, 1.0 - two_s) / (two_s - 1.0);
        acc -= f.tail_coeff_minus() * algebraic_tail_series(T, -z0, t.power, two_s);
    }
    return normalization_constant(1, s).value * acc;
}

} // namespace

double c_H(double z0, const LayerProfile& profile, const QuadratureScheme& scheme) {
    const double Zh = profile.Z_max() / 2.0;
    if (std::abs(z0) > Zh)
        throw std::invalid_argument("c_H: |z0| must be <= Z_max/2");
    return ch_form1(profile.sampled(), z0, profile.s, scheme);
}

double c_H_alt(double z0, const LayerProfile& profile, const QuadratureScheme& scheme) {
    scheme.validate();
    const FracOrder s = profile.s;
    const double two_s = s.two_s();
    const Sampled1D f = profile.sampled();
    const double zhi = f.z_max(), zlo = f.z_min();
    // integrable kernel |z0-z|^{-(2s-1)}; no principal value needed
    auto kern = [&](double u) { return std::pow(std::abs(u), 1.0 - two_s); };
    auto g = [&](double z) { return f.deriv(z) * kern(z - z0); };
    const double a = std::min(1.0, 0.25 * (zhi - zlo));
    const double r0 = std::min(scheme.excision_radius, 0.25 * a);
    const int n_near = std::max(10, scheme.node_budget / 4);
    double acc = 0.0;
    acc += integrate_ladder([&](double d) { return g(z0 + d); }, r0, a, n_near);
    acc += integrate_ladder([&](double d) { return g(z0 - d); }, r0, a, n_near);
    acc += f.deriv(z0) * 2.0 * std::pow(r0, 2.0 - two_s) / (2.0 - two_s); // excised bit
    const auto& knots = f.spline().knots();
    acc += integrate_knotwise(g, knots, z0 + a, zhi, z0);
    acc += integrate_knotwise(g, knots, zlo, z0 - a, z0);
    if (f.tail()) {
        const auto& t = *f.tail();
        const double T = scheme.truncation_radius;
        const int n_far = std::max(24, scheme.node_budget / 2);
        acc += integrate_ladder(g, zhi, T, n_far);
        acc += integrate_ladder([&](double v) { return g(-v); }, -zlo, T, n_far);
        // w' ~ 2s c |z|^{-2s-1} beyond T; (z-z0)^{1-2s} expanded around z^{1-2s}.
        const double cw = f.tail_coeff_plus() * t.power;
        double coeff = 1.0, acc_t = 0.0, z0k = 1.0;
        for (int k = 0; k < 4; ++k) {
            const double expo = 2.0 * two_s - 1.0 + k; // z^{-(2s+1)} z^{1-2s} z^{-k}
            acc_t += coeff * z0k * std::pow(T, -expo) / expo;
            coeff *= (two_s - 1.0 + k) / (k + 1.0);
            z0k *= z0;
        }
        acc += cw * acc_t;
        const double cw_m = f.tail_coeff_minus() * t.power;
        coeff = 1.0;
        acc_t = 0.0;
        z0k = 1.0;
        for (int k = 0; k < 4; ++k) {
            const double expo = 2.0 * two_s - 1.0 + k;
            acc_t += coeff * z0k * std::pow(T, -expo) / expo;
            coeff *= (two_s - 1.0 + k) / (k + 1.0);
            z0k *= -z0;
        }
        acc += cw_m * acc_t;
    }
    return normalization_constant(1, s).value / (two_s - 1.0) * acc;
}

ProjectionConstants projection_constants(const LayerProfile& profile, const CutoffPair& cutoffs,
                                         double R_zeta) {
    if (!(2.0 * R_zeta <= profile.Z_max()))
        throw std::invalid_argument("projection_constants: need 2 R_zeta <= Z_max");
    const Sampled1D f = profile.sampled();
    const QuadratureScheme sch = profile.scheme();

    auto wp = [&](double z) { return f.deriv(z); };
    auto zeta = [&](double z) { return cutoffs.zeta(z, R_zeta); };

    // Integrands are even; integrate z in [0, 2 R_zeta]. The c_H factor is
    // only defined out to Z_max/2; beyond the cap the w' decay makes the
    // integrand negligible relative to the total.
    const double z_hi = std::min(2.0 * R_zeta, profile.Z_max() / 2.0);
    const int panels = 48;
    const double hb = z_hi / panels;
    double cbar = 0.0, inner = 0.0;
    for (int i = 0; i < panels; ++i) {
        cbar += gauss_panel<6>(
            [&](double z) { return c_H(z, profile, sch) * zeta(z) * wp(z); }, i * hb,
            (i + 1) * hb);
    }
    const double hb2 = 2.0 * R_zeta / panels;
    for (int i = 0; i < panels; ++i) {
        inner += gauss_panel<6>(
            [&](double z) {
                const double w = f(z);
                return (1.0 - w * w) * zeta(z) * wp(z);
            },
            i * hb2, (i + 1) * hb2);
    }
    cbar *= 2.0;
    inner *= 2.0;
    return ProjectionConstants{cbar, 3.0 * profile.c_w * inner, inner, R_zeta};
}

double far_interaction(const LayerProfile& profile, double z_plus, double z_minus) {
    const Sampled1D f = profile.sampled();
    const double a = f(z_plus), b = f(z_minus);
    return 3.0 * (a + b) * (1.0 + a) * (1.0 + b);
}

} // namespace fraccat
