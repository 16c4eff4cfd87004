#include "fraccat/reduced.hpp"

#include "fraccat/errors.hpp"
#include "fraccat/gauss.hpp"
#include "fraccat/ode.hpp"

#include <algorithm>
#include <cmath>

namespace fraccat {

namespace {

constexpr double kR1 = 1.4142135623730951; // sqrt(2): 45-degree matching radius

double loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
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

// Cumulative ∫ g over a grid, one Gauss-3 panel per interval.
std::vector<double> cumulative(const std::function<double(double)>& g,
                               const std::vector<double>& r) {
    std::vector<double> I(r.size(), 0.0);
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double a = r[i - 1], b = r[i];
        const double c = 0.5 * (a + b), hh = 0.5 * (b - a);
        const double x1 = 0.7745966692414834, w1 = 5.0 / 9.0, w0 = 8.0 / 9.0;
        I[i] = I[i - 1] + hh * (w0 * g(c) + w1 * (g(c + hh * x1) + g(c - hh * x1)));
    }
    return I;
}

std::vector<double> log_grid(double a, double b, int n) {
    std::vector<double> g(n);
    const double q = std::log(b / a) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = a * std::exp(q * i);
    g.front() = a;
    g.back() = b;
    return g;
}

} // namespace

// ---------------------------------------------------------------------------
// Weighted norms

double norm_star(const GridFunction& phi, const WeightedNormSpec& spec) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, sh = 0.0;
    const double g = spec.gamma, al = spec.alpha;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double r = phi.r[i];
        if (r < spec.domain_start) continue;
        s0 = std::max(s0, std::pow(r, g - 2.0) * std::abs(phi.f[i]));
        s1 = std::max(s1, std::pow(r, g - 1.0) * std::abs(phi.f1[i]));
        s2 = std::max(s2, std::pow(r, g) * std::abs(phi.f2[i]));
    }
    for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
        for (std::size_t j = i + 1; j < phi.size(); ++j) {
            const double gap = phi.r[j] - phi.r[i];
            if (j > i + 1 && gap > 1.0) break;
            const double weight = std::pow(std::min(phi.r[i], phi.r[j]), g + al);
            sh = std::max(sh,
                          weight * std::abs(phi.f2[j] - phi.f2[i]) / std::pow(gap, al));
        }
    }
    return s0 + s1 + s2 + sh;
}

double norm_star_star_values(const std::vector<double>& r, const std::vector<double>& h,
                             const WeightedNormSpec& spec) {
    double s0 = 0.0, sh = 0.0;
    const double g = spec.gamma, al = spec.alpha;
    for (std::size_t i = 0; i < r.size(); ++i)
        s0 = std::max(s0, std::pow(r[i], g) * std::abs(h[i]));
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) {
            const double gap = r[j] - r[i];
            if (j > i + 1 && gap > 1.0) break;
            const double weight = std::pow(std::min(r[i], r[j]), g + al);
            sh = std::max(sh, weight * std::abs(h[j] - h[i]) / std::pow(gap, al));
        }
    }
    return s0 + sh;
}

// ---------------------------------------------------------------------------
// Emden-Fowler

double emden_fowler_hamiltonian(FracOrder s, double h, double hp) {
    const double m = s.two_s() - 1.0;
    return 0.5 * hp * hp + 0.5 * (h * h - 1.0) + (std::pow(h, -m) - 1.0) / m;
}

std::vector<EmdenFowlerState> emden_fowler_flow(FracOrder s, const EmdenFowlerState& initial,
                                                double t_max, const EmdenFowlerOptions& opts) {
    if (!(initial.h > 0.0))
        throw std::invalid_argument("emden_fowler_flow: initial h must be positive");
    const double two_s = s.two_s();
    auto rhs = [&](double, const std::array<double, 2>& y) -> std::array<double, 2> {
        return {y[1], opts.c0 * std::pow(y[0], -two_s) - 2.0 * y[1] - y[0]};
    };
    std::vector<EmdenFowlerState> out;
    std::array<double, 2> y{initial.h, initial.h_prime};
    double t = initial.t;
    out.push_back({t, y[0], y[1], emden_fowler_hamiltonian(s, y[0], y[1])});
    while (t < t_max - 1e-12) {
        const double t_next = std::min(t + opts.dt_record, t_max);
        y = integrate_dopri5<2>(rhs, y, t, t_next, opts.rtol, 1e-13);
        t = t_next;
        if (!(y[0] > 0.02))
            throw NonConvergence("emden_fowler_flow: blow-down, h left the basin");
        out.push_back({t, y[0], y[1], emden_fowler_hamiltonian(s, y[0], y[1])});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Initial approximation

double r_eps_of(FracOrder s, double eps) {
    return std::pow(std::abs(std::log(eps)) / eps, 0.5 * (s.two_s() - 1.0));
}

FEpsResult continue_f_eps(FracOrder s, double eps, double r_max, double tol, double c0) {
    s.require_pipeline();
    if (!(eps > 0.0 && eps <= 1e-2))
        throw std::invalid_argument("continue_f_eps: need 0 < eps <= 1e-2");
    const double L = std::abs(std::log(eps));
    const double re = r_eps_of(s, eps);
    if (!(r_max >= 10.0 * L * re))
        throw std::invalid_argument("continue_f_eps: r_max must be >= 10 |log eps| r_eps");
    const double two_s = s.two_s();
    const double K = c0 * std::pow(eps, two_s - 1.0);

    // log-radius variables: u = f, v = r f'.
    auto rhs = [&](double t, const std::array<double, 2>& y) -> std::array<double, 2> {
        const double r = std::exp(t);
        if (!(y[0] > 0.0)) throw NonConvergence("continue_f_eps: f reached zero");
        return {y[1], r * r * K * std::pow(y[0], -two_s)};
    };

    FEpsResult out;
    out.r_eps = re;
    const int n = 2400;
    out.profile.r = log_grid(re, r_max, n);
    out.profile.f.resize(n);
    out.profile.f1.resize(n);
    out.profile.f2.resize(n);

    std::array<double, 2> y{std::acosh(re), re / std::sqrt(re * re - 1.0)};
    double max_f = 0.0, min_f = std::numeric_limits<double>::infinity(), max_fp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = out.profile.r[i];
        if (i > 0)
            y = integrate_dopri5<2>(rhs, y, std::log(out.profile.r[i - 1]), std::log(r),
                                    std::max(tol, 1e-12), 1e-13);
        out.profile.f[i] = y[0];
        out.profile.f1[i] = y[1] / r;
        out.profile.f2[i] = K * std::pow(y[0], -two_s) - y[1] / (r * r);
        if (!(out.profile.f1[i] >= -1e-14))
            throw NonConvergence("continue_f_eps: monotonicity lost");
        if (r <= L * re) {
            max_f = std::max(max_f, y[0] / L);
            min_f = std::min(min_f, y[0] / L);
            max_fp = std::max(max_fp, out.profile.f1[i] * re);
        }
    }
    out.lemma_near_max_f_over_logeps = max_f;
    out.lemma_near_min_f_over_logeps = min_f;
    out.lemma_near_max_fp_times_reps = max_fp;

    // Far-field amplitude: average F / r^beta over the outer decade.
    const double beta = 2.0 / (two_s + 1.0);
    double acc = 0.0;
    int cnt = 0;
    for (int i = 0; i < n; ++i) {
        if (out.profile.r[i] < 0.1 * r_max) continue;
        acc += out.profile.f[i] / std::pow(out.profile.r[i], beta);
        ++cnt;
    }
    out.tail_A = acc / cnt;
    return out;
}

F0Profile::F0Profile(FracOrder s, double eps, const CutoffPair& cutoffs, double r_max,
                     double tol, double c0)
    : s_(s), eps_(eps), c0_(c0), r_max_(r_max), cut_(cutoffs) {
    const FEpsResult fe = continue_f_eps(s, eps, r_max, tol, c0);
    r_eps_ = fe.r_eps;
    tail_A_ = fe.tail_A;
    fe_ = CubicSpline(fe.profile.r, fe.profile.f);
    fe1_ = CubicSpline(fe.profile.r, fe.profile.f1);
    fe2_ = CubicSpline(fe.profile.r, fe.profile.f2);
}

double F0Profile::operator()(double r) const {
    const double fc = std::acosh(std::max(r, 1.0));
    const double c = cut_.chi(r - r_eps_);
    if (c <= 0.0) return fc;
    return fc + c * (fe_.eval(r) - fc);
}

double F0Profile::d1(double r) const {
    const auto arc = catenoid_arc(std::max(r, 1.0));
    const double c = cut_.chi(r - r_eps_);
    if (c <= 0.0) return arc.F1;
    const double cd = cut_.chi_d1(r - r_eps_);
    const double d = fe_.eval(r) - arc.F;
    const double d1v = fe1_.eval(r) - arc.F1;
    return arc.F1 + cd * d + c * d1v;
}

double F0Profile::d2(double r) const {
    const auto arc = catenoid_arc(std::max(r, 1.0));
    const double c = cut_.chi(r - r_eps_);
    if (c <= 0.0) return arc.F2;
    const double cd = cut_.chi_d1(r - r_eps_);
    const double cdd = cut_.chi_d2(r - r_eps_);
    const double d = fe_.eval(r) - arc.F;
    const double d1v = fe1_.eval(r) - arc.F1;
    const double d2v = fe2_.eval(r) - arc.F2;
    return arc.F2 + cdd * d + 2.0 * cd * d1v + c * d2v;
}

RadialFn F0Profile::as_radial_fn() const {
    const F0Profile copy = *this;
    return RadialFn::from_functions([copy](double r) { return copy(r); },
                                    [copy](double r) { return copy.d1(r); },
                                    [copy](double r) { return copy.d2(r); }, 1.0, r_max_);
}

ChiEps make_chi_eps(FracOrder s, double eps, double delta0, double K_min) {
    const double L = std::abs(std::log(eps));
    const double K = std::max(delta0 * L, K_min);
    ChiEps c;
    c.r_eps = r_eps_of(s, eps);
    c.r_tilde = K * c.r_eps;
    return c;
}

// ---------------------------------------------------------------------------
// Linearized operator

double L0_apply_point(double r, double phi, double phi1, double phi2, const F0Profile& F0,
                      const ChiEps& chi) {
    const double c = chi(r);
    double inner = 0.0;
    if (c < 1.0) {
        const double F1 = F0.d1(r), F2 = F0.d2(r);
        const double q = 1.0 + F1 * F1;
        const double P = std::pow(q, -1.5);
        const double Pp = -3.0 * F1 * F2 * std::pow(q, -2.5);
        inner = P * phi2 + (P / r + Pp) * phi1;
    }
    double outer = 0.0;
    if (c > 0.0) {
        const double two_s = F0.s().two_s();
        const double q = 2.0 * F0.s().s * F0.c0() * std::pow(F0.eps(), two_s - 1.0) *
                         std::pow(F0(r), -(two_s + 1.0));
        outer = phi2 + phi1 / r + q * phi;
    }
    return (1.0 - c) * inner + c * outer;
}

GridFunction L0_apply(const GridFunction& phi, const F0Profile& F0, const ChiEps& chi) {
    GridFunction out;
    out.r = phi.r;
    out.f.resize(phi.size());
    out.f1.assign(phi.size(), 0.0);
    out.f2.assign(phi.size(), 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i)
        out.f[i] = L0_apply_point(phi.r[i], phi.f[i], phi.f1[i], phi.f2[i], F0, chi);
    return out;
}

// ---------------------------------------------------------------------------
// Far kernels

FarKernels build_far_kernels(FracOrder s, double eps, double delta0, double rho_max,
                             double tol) {
    return build_far_kernels_scaled(s, eps, delta0, rho_max, 1.0, tol);
}

FarKernels build_far_kernels_scaled(FracOrder s, double eps, double delta0, double rho_max,
                                    double c0, double tol) {
    s.require_pipeline();
    const double two_s = s.two_s();
    const double beta = 2.0 / (two_s + 1.0);
    const double L = std::abs(std::log(eps));
    const double re = r_eps_of(s, eps);
    const double rho0 = std::sqrt(c0) / L;
    if (!(delta0 >= rho0))
        throw std::invalid_argument("build_far_kernels: delta0 below the data point 1/|log eps|");

    auto rhs_g = [&](double t, const std::array<double, 2>& y) -> std::array<double, 2> {
        const double rho = std::exp(t);
        return {y[1], rho * rho * std::pow(y[0], -two_s)};
    };

    FarKernels k;
    k.delta0 = delta0;
    k.rho_min = rho0;
    k.rho_max = rho_max;

    const int n = 1600;
    std::vector<double> grid = log_grid(rho0, rho_max, n);
    std::vector<double> gv(n), g1v(n), z1v(n), z1p(n);
    std::array<double, 2> y{std::acosh(re) / L, re / std::sqrt(re * re - 1.0) / std::sqrt(c0)};
    for (int i = 0; i < n; ++i) {
        const double rho = grid[i];
        if (i > 0) y = integrate_dopri5<2>(rhs_g, y, std::log(grid[i - 1]), std::log(rho), tol,
                                           1e-14);
        gv[i] = y[0];
        g1v[i] = y[1] / rho;
        z1v[i] = rho * g1v[i] - beta * gv[i];
        // Z1' = rho g^{-2s} - beta g'
        z1p[i] = rho * std::pow(gv[i], -two_s) - beta * g1v[i];
    }
    k.g = CubicSpline(grid, gv);
    k.g1 = CubicSpline(grid, g1v);
    k.Z1 = CubicSpline(grid, z1v);
    k.Z1p = CubicSpline(grid, z1p);

    // Z2 from the normalized data at delta0; forward and (if room) backward.
    const double z1d = k.Z1.eval(delta0), z1pd = k.Z1p.eval(delta0);
    const double den = delta0 * (z1d * z1d + z1pd * z1pd);
    if (!(std::abs(den) > 1e-300))
        throw NonConvergence("build_far_kernels: degenerate Z2 normalization at delta0");
    auto rhs_z = [&](double t, const std::array<double, 2>& yz) -> std::array<double, 2> {
        const double rho = std::exp(t);
        const double q = 2.0 * s.s * std::pow(k.g.eval(rho), -(two_s + 1.0));
        return {yz[1], -rho * rho * q * yz[0]};
    };
    std::vector<double> z2v(n, 0.0), z2p(n, 0.0);
    // locate delta0 in the grid
    std::size_t i0 = 0;
    while (i0 + 1 < grid.size() && grid[i0 + 1] <= delta0) ++i0;
    // forward sweep from delta0
    {
        std::array<double, 2> yz{-z1pd / den, delta0 * z1d / den}; // (Z2, rho Z2')
        double t_prev = std::log(delta0);
        for (std::size_t i = i0 + 1; i < grid.size(); ++i) {
            const double t = std::log(grid[i]);
            yz = integrate_dopri5<2>(rhs_z, yz, t_prev, t, tol, 1e-14);
            t_prev = t;
            z2v[i] = yz[0];
            z2p[i] = yz[1] / grid[i];
        }
    }
    // backward sweep (reverse time, tau = -t)
    {
        auto rhs_back = [&](double tau, const std::array<double, 2>& yz) -> std::array<double, 2> {
            const auto f = rhs_z(-tau, yz);
            return {-f[0], -f[1]};
        };
        std::array<double, 2> yz{-z1pd / den, delta0 * z1d / den};
        double tau_prev = -std::log(delta0);
        for (std::size_t ii = i0 + 1; ii-- > 0;) {
            const double tau = -std::log(grid[ii]);
            yz = integrate_dopri5<2>(rhs_back, yz, tau_prev, tau, tol, 1e-14);
            tau_prev = tau;
            z2v[ii] = yz[0];
            z2p[ii] = yz[1] / grid[ii];
        }
    }
    // value at delta0 itself
    {
        std::vector<double> tmp_r{delta0};
        (void)tmp_r;
        const std::size_t iex = i0; // nearest grid node below; fill by interpolation later
        (void)iex;
    }
    // fill the anchor node if it coincides with a grid point
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(grid[i] - delta0) < 1e-12 * delta0) {
            z2v[i] = -z1pd / den;
            z2p[i] = z1d / den;
        }
    }
    k.Z2 = CubicSpline(grid, z2v);
    k.Z2p = CubicSpline(grid, z2p);
    return k;
}

double kernel_Z1_value(const FarKernels& k, double rho) { return k.Z1.eval(rho); }

// ---------------------------------------------------------------------------
// Context and right inverse

ReducedContext make_reduced_context(FracOrder s, double eps, double c0, double R_out,
                                    double delta0, double K_min) {
    s.require_pipeline();
    ChiEps chi = make_chi_eps(s, eps, delta0, K_min);
    const double L = std::abs(std::log(eps));
    const double scale = L * r_eps_of(s, eps) / std::sqrt(c0);
    const double anchor = chi.r_tilde / scale;
    FarKernels kernels =
        build_far_kernels_scaled(s, eps, anchor, 1.10 * R_out / scale, c0, 1e-12);
    F0Profile F0(s, eps, chi.cut, 1.05 * R_out, 1e-11, c0);
    return ReducedContext{s,  eps,     c0,      kR1,  std::move(F0),
                          chi, std::move(kernels), R_out, scale};
}

namespace {

struct RegionGrids {
    std::vector<double> inner, mid, outer;
};

RegionGrids region_grids(const ReducedContext& ctx) {
    RegionGrids g;
    g.inner = log_grid(ctx.r1, ctx.chi.r_eps, 360);
    g.mid = log_grid(ctx.chi.r_eps, ctx.chi.r_tilde, 420);
    g.outer = log_grid(ctx.chi.r_tilde, ctx.R_out, 720);
    return g;
}

} // namespace

GridFunction right_inverse_T(const std::function<double(double)>& h, const ReducedContext& ctx) {
    const RegionGrids grids = region_grids(ctx);
    const F0Profile& F0 = ctx.F0;

    // Inner: (1/r)(r phi' (1+F0'^2)^{-3/2})' = h, phi(r1) = phi'(r1) = 0.
    const auto& ri = grids.inner;
    std::vector<double> Ih = cumulative([&](double t) { return t * h(t); }, ri);
    std::vector<double> phi_i(ri.size()), phi1_i(ri.size()), phi2_i(ri.size());
    {
        CubicSpline Isp(ri, Ih);
        auto phi1_of = [&](double r) {
            const double F1 = F0.d1(r);
            return Isp.eval(r) * std::pow(1.0 + F1 * F1, 1.5) / r;
        };
        std::vector<double> phi_acc = cumulative(phi1_of, ri);
        for (std::size_t i = 0; i < ri.size(); ++i) {
            const double r = ri[i];
            const double F1 = F0.d1(r), F2 = F0.d2(r);
            const double q = 1.0 + F1 * F1;
            const double P = std::pow(q, -1.5);
            const double Pp = -3.0 * F1 * F2 * std::pow(q, -2.5);
            phi_i[i] = phi_acc[i];
            phi1_i[i] = phi1_of(r);
            phi2_i[i] = (h(r) - phi1_i[i] * (P / r + Pp)) / P;
        }
    }

    // Ramp: phi'' + phi'/r = h + htilde[phi], iterated double integral with
    // value/slope data at r_eps.
    const auto& rm = grids.mid;
    std::vector<double> phi_m(rm.size(), 0.0), phi1_m(rm.size(), 0.0), phi2_m(rm.size(), 0.0);
    {
        const double re = ctx.chi.r_eps;
        const double phi_e = phi_i.back();
        const double slope_e = phi1_i.back();
        std::vector<double> ht(rm.size(), 0.0); // htilde at the grid nodes
        for (int pass = 0; pass < 10; ++pass) {
            CubicSpline htsp(rm, ht);
            auto rhs = [&](double t) { return t * (h(t) + htsp.eval(t)); };
            std::vector<double> Kcum = cumulative(rhs, rm);
            CubicSpline Ksp(rm, Kcum);
            auto phi1_of = [&](double r) { return (re * slope_e + Ksp.eval(r)) / r; };
            std::vector<double> phi_acc = cumulative(phi1_of, rm);
            double delta = 0.0;
            for (std::size_t i = 0; i < rm.size(); ++i) {
                const double r = rm[i];
                phi_m[i] = phi_e + phi_acc[i];
                phi1_m[i] = phi1_of(r);
                phi2_m[i] = h(r) + ht[i] - phi1_m[i] / r;
                const double ht_new =
                    (phi2_m[i] + phi1_m[i] / r) -
                    L0_apply_point(r, phi_m[i], phi1_m[i], phi2_m[i], F0, ctx.chi);
                delta = std::max(delta, std::abs(ht_new - ht[i]));
                ht[i] = ht_new;
            }
            if (delta < 1e-13) break;
        }
    }

    // Outer: variation of parameters with the scaled kernels, matched in
    // value and slope at rtilde.
    const auto& ro = grids.outer;
    std::vector<double> phi_o(ro.size()), phi1_o(ro.size()), phi2_o(ro.size());
    {
        const double sc = ctx.kernel_scale;
        auto Z1 = [&](double r) { return ctx.kernels.Z1.eval(r / sc); };
        auto Z1p = [&](double r) { return ctx.kernels.Z1p.eval(r / sc) / sc; };
        auto Z2 = [&](double r) { return ctx.kernels.Z2.eval(r / sc); };
        auto Z2p = [&](double r) { return ctx.kernels.Z2p.eval(r / sc) / sc; };
        const double rt = ctx.chi.r_tilde;
        const double W = Z1(rt) * Z2p(rt) - Z1p(rt) * Z2(rt); // = 1/rt
        const double c1 = (phi_m.back() * Z2p(rt) - phi1_m.back() * Z2(rt)) / W;
        const double c2 = (-phi_m.back() * Z1p(rt) + phi1_m.back() * Z1(rt)) / W;
        std::vector<double> A = cumulative([&](double t) { return t * Z2(t) * h(t); }, ro);
        std::vector<double> B = cumulative([&](double t) { return t * Z1(t) * h(t); }, ro);
        const double two_s = ctx.s.two_s();
        for (std::size_t i = 0; i < ro.size(); ++i) {
            const double r = ro[i];
            phi_o[i] = c1 * Z1(r) + c2 * Z2(r) - Z1(r) * A[i] + Z2(r) * B[i];
            phi1_o[i] = c1 * Z1p(r) + c2 * Z2p(r) - Z1p(r) * A[i] + Z2p(r) * B[i];
            const double q = 2.0 * ctx.s.s * ctx.c0 * std::pow(ctx.eps, two_s - 1.0) *
                             std::pow(F0(r), -(two_s + 1.0));
            phi2_o[i] = h(r) - phi1_o[i] / r - q * phi_o[i];
        }
    }

    GridFunction out;
    auto push = [&](const std::vector<double>& r, const std::vector<double>& f,
                    const std::vector<double>& f1, const std::vector<double>& f2,
                    bool skip_first) {
        for (std::size_t i = skip_first ? 1 : 0; i < r.size(); ++i) {
            out.r.push_back(r[i]);
            out.f.push_back(f[i]);
            out.f1.push_back(f1[i]);
            out.f2.push_back(f2[i]);
        }
    };
    push(grids.inner, phi_i, phi1_i, phi2_i, false);
    push(grids.mid, phi_m, phi1_m, phi2_m, true);
    push(grids.outer, phi_o, phi1_o, phi2_o, true);
    return out;
}

double measured_T_bound(const std::function<double(double)>& h, const ReducedContext& ctx,
                        const WeightedNormSpec& norms) {
    const GridFunction phi = right_inverse_T(h, ctx);
    std::vector<double> hv(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) hv[i] = h(phi.r[i]);
    const double hn = norm_star_star_values(phi.r, hv, norms);
    return norm_star(phi, norms) / hn;
}

// ---------------------------------------------------------------------------
// Reduced solve

namespace {

// Full nonlinear reduced operator: (1-chi) H_rev[F] + chi (Delta F - forcing).
double L_full_point(double r, double F, double F1, double F2, const ReducedContext& ctx) {
    const double c = ctx.chi(r);
    double inner = 0.0;
    if (c < 1.0) {
        const double q = 1.0 + F1 * F1;
        inner = F2 / (q * std::sqrt(q)) + F1 / (r * std::sqrt(q));
    }
    double outer = 0.0;
    if (c > 0.0) {
        const double two_s = ctx.s.two_s();
        outer = F2 + F1 / r -
                ctx.c0 * std::pow(ctx.eps, two_s - 1.0) * std::pow(F, -two_s);
    }
    return (1.0 - c) * inner + c * outer;
}

} // namespace

SolveReducedResult solve_reduced(FracOrder s, double eps, const CutoffPair& cutoffs,
                                 double C_bar, double C_bar_pm,
                                 const SolveReducedOptions& opts) {
    s.require_pipeline();
    if (!(eps <= 1e-2)) throw std::invalid_argument("solve_reduced: need eps <= 1e-2");
    if (!(C_bar > 0.0 && C_bar_pm > 0.0))
        throw std::invalid_argument("solve_reduced: projection constants must be positive");
    (void)cutoffs;
    const double c0 = C_bar_pm / C_bar;
    ChiEps chi_probe = make_chi_eps(s, eps, opts.delta0, opts.K_min);
    const double R_out = opts.R_out_factor * chi_probe.r_tilde;
    ReducedContext ctx = make_reduced_context(s, eps, c0, R_out, opts.delta0, opts.K_min);

    WeightedNormSpec norms;
    norms.domain_start = ctx.r1;

    // Fixed point phi = T(A[phi]), A[phi] = N[F] - L(F) + L0 phi, F = F0+phi.
    GridFunction phi = right_inverse_T([](double) { return 0.0; }, ctx);
    for (auto& v : phi.f) v = 0.0;
    for (auto& v : phi.f1) v = 0.0;
    for (auto& v : phi.f2) v = 0.0;

    double rate = 0.0, prev_delta = -1.0;
    double last_norm = 0.0;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        CubicSpline p(phi.r, phi.f), p1(phi.r, phi.f1), p2(phi.r, phi.f2);
        auto A = [&](double r) {
            const double pv = p.eval(r), p1v = p1.eval(r), p2v = p2.eval(r);
            const double F = ctx.F0(r) + pv;
            const double F1 = ctx.F0.d1(r) + p1v;
            const double F2 = ctx.F0.d2(r) + p2v;
            double N = 0.0;
            const double c = ctx.chi(r);
            if (opts.forcing.N_mid && c < 1.0) N += (1.0 - c) * opts.forcing.N_mid(r);
            if (opts.forcing.N_far && c > 0.0) N += c * opts.forcing.N_far(r);
            return N - L_full_point(r, F, F1, F2, ctx) +
                   L0_apply_point(r, pv, p1v, p2v, ctx.F0, ctx.chi);
        };
        GridFunction next = right_inverse_T(A, ctx);
        GridFunction diff = next;
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff.f[i] -= phi.f[i];
            diff.f1[i] -= phi.f1[i];
            diff.f2[i] -= phi.f2[i];
        }
        const double delta = norm_star(diff, norms);
        if (prev_delta > 0.0) rate = std::max(rate, delta / prev_delta);
        prev_delta = delta;
        phi = std::move(next);
        last_norm = norm_star(phi, norms);
        if (delta <= opts.tol * std::max(1.0, last_norm)) break;
        if (it > 3 && rate >= 1.0)
            throw NonConvergence("solve_reduced: fixed point not contracting, rate " +
                                 std::to_string(rate));
    }

    SolveReducedResult res{.neck = {},
                           .F = {},
                           .phi = phi,
                           .ctx = std::move(ctx),
                           .contraction_rate = rate,
                           .phi_norm_star = last_norm,
                           .far_tail_slope = 0.0,
                           .mid_residual = 0.0,
                           .far_residual = 0.0,
                           .matching_gap = 0.0};
    const ReducedContext& cx = res.ctx;

    res.F = phi;
    for (std::size_t i = 0; i < res.F.size(); ++i) {
        const double r = res.F.r[i];
        res.F.f[i] += cx.F0(r);
        res.F.f1[i] += cx.F0.d1(r);
        res.F.f2[i] += cx.F0.d2(r);
    }

    // Neck: G'' = (1+G'^2)/G + N1 (1+G'^2)^{3/2}, G(0)=1, G'(0)=0, to z1 = F(r1).
    {
        const double z1 = res.F.f.front();
        auto rhs = [&](double z, const std::array<double, 2>& y) -> std::array<double, 2> {
            const double q = 1.0 + y[1] * y[1];
            double N1 = 0.0;
            if (opts.forcing.N_mid) N1 = opts.forcing.N_mid(-z); // neck side, by convention
            return {y[1], q / y[0] + N1 * q * std::sqrt(q)};
        };
        const int n = 240;
        res.neck.z.resize(n + 1);
        res.neck.G.resize(n + 1);
        res.neck.G1.resize(n + 1);
        std::array<double, 2> y{1.0, 0.0};
        for (int i = 0; i <= n; ++i) {
            const double z = z1 * i / n;
            if (i > 0) y = integrate_dopri5<2>(rhs, y, z1 * (i - 1) / n, z, 1e-12, 1e-14);
            res.neck.z[i] = z;
            res.neck.G[i] = y[0];
            res.neck.G1[i] = y[1];
        }
        res.neck.z1 = z1;
        res.neck.r1 = y[0];
        res.neck.G1_at_z1 = y[1];
        const double gap1 = std::abs(y[0] / cx.r1 - 1.0);
        const double gap2 = std::abs(res.F.f1.front() * y[1] - 1.0);
        res.matching_gap = std::max(gap1, gap2);
    }

    // Residuals and the far slope.
    {
        const double two_s = s.two_s();
        double mid = 0.0;
        for (std::size_t i = 0; i < res.F.size(); ++i) {
            const double r = res.F.r[i];
            if (r > 40.0) break;
            const double F1 = res.F.f1[i], F2 = res.F.f2[i];
            const double q = 1.0 + F1 * F1;
            double v = F2 / (q * std::sqrt(q)) + F1 / (r * std::sqrt(q));
            if (opts.forcing.N_mid) v -= opts.forcing.N_mid(r);
            mid = std::max(mid, std::abs(v));
        }
        res.mid_residual = mid;

        double far = 0.0;
        for (std::size_t i = 0; i < res.F.size(); ++i) {
            const double r = res.F.r[i];
            if (r < cx.chi.r_tilde || r > 0.9 * cx.R_out) continue;
            const double scale =
                cx.c0 * std::pow(eps, two_s - 1.0) * std::pow(cx.F0(r), -two_s);
            double v = res.F.f2[i] + res.F.f1[i] / r -
                       cx.c0 * std::pow(eps, two_s - 1.0) * std::pow(res.F.f[i], -two_s);
            if (opts.forcing.N_far) v -= opts.forcing.N_far(r);
            far = std::max(far, std::abs(v) / scale);
        }
        res.far_residual = far;

        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < res.F.size(); ++i) {
            const double r = res.F.r[i];
            if (r < 10.0 * cx.chi.r_tilde || r > 100.0 * cx.chi.r_tilde) continue;
            xs.push_back(r);
            ys.push_back(res.F.f[i]);
        }
        res.far_tail_slope = loglog_fit(xs, ys);
    }
    return res;
}

} // namespace fraccat
