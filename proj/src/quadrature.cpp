#include "fraccat/quadrature.hpp"

#include "fraccat/errors.hpp"
#include "fraccat/gauss.hpp"
#include "fraccat/panels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fraccat {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct TailInfo {
    bool active = false;
    double p = 0.0;
    double lim_plus = 0.0, lim_minus = 0.0;
    double c_plus = 0.0, c_minus = 0.0; // signed per AlgebraicTail convention
};

TailInfo resolve_tail(const Sampled1D& f, const QuadratureScheme& sch) {
    TailInfo t;
    if (sch.tail_kind == QuadratureScheme::TailKind::none || !f.tail()) return t;
    const auto& m = *f.tail();
    t.active = true;
    t.p = sch.tail_power > 0.0 ? sch.tail_power : m.power;
    t.lim_plus = m.limit_plus;
    t.lim_minus = m.limit_minus;
    t.c_plus = f.tail_coeff_plus();
    t.c_minus = f.tail_coeff_minus();
    return t;
}

struct Frac1DOptions {
    // Optional |z| <= window restriction (absolute z) and kernel deflation
    // (R1^2+u^2)^{-(1+2s)/2} subtracted from |u|^{-1-2s}; used by the
    // windowed-flat reduction. R1 <= 0 disables both.
    double window_R1 = -1.0;
};

double frac1d_core(const Sampled1D& f, double z0, FracOrder s, const QuadratureScheme& sch,
                   const Frac1DOptions& opt) {
    sch.validate();
    const double two_s = s.two_s();
    const double zlo = f.z_min(), zhi = f.z_max();
    if (!(z0 >= zlo && z0 <= zhi))
        throw std::invalid_argument("frac_laplacian_1d: z0 outside the sampled grid");

    const bool windowed = opt.window_R1 > 0.0;
    const double R1 = opt.window_R1;
    const double lim_lo = windowed ? std::max(zlo, -R1) : zlo;
    const double lim_hi = windowed ? std::min(zhi, R1) : zhi;
    if (windowed && !(z0 > -R1 && z0 < R1))
        throw std::invalid_argument("frac1d_window_flat: z0 outside the window");

    const double f0 = f(z0);
    const double f1 = f.deriv(z0);
    const double f2 = f.deriv2(z0);

    auto k_singular = [&](double u) { return std::pow(std::abs(u), -1.0 - two_s); };
    auto k_deflate = [&](double u) {
        return windowed ? std::pow(R1 * R1 + u * u, -0.5 * (1.0 + two_s)) : 0.0;
    };

    // Half-width of the Taylor window.
    double a = std::min(1.0, 0.25 * (zhi - zlo));
    if (windowed) a = std::min(a, 0.45 * std::min(R1 - z0, R1 + z0));

    const double r0 = std::min(sch.excision_radius, 0.25 * a);
    const int n_near = std::max(10, sch.node_budget / 4);

    // Near window: second-order-subtracted integrand, graded toward z0.
    auto regularized = [&](double z) {
        const double u = z - z0;
        const double taylored = f0 - f(z) + f1 * u + 0.5 * f2 * u * u;
        return taylored * (k_singular(u) - k_deflate(u));
    };
    double acc = 0.0;
    acc += integrate_ladder([&](double d) { return regularized(z0 + d); }, r0, a, n_near);
    acc += integrate_ladder([&](double d) { return regularized(z0 - d); }, r0, a, n_near);
    // Analytic window terms for the subtracted pieces: the linear one has
    // zero principal value, the quadratic one integrates in closed form.
    acc -= f2 * std::pow(a, 2.0 - two_s) / (2.0 - two_s);
    if (windowed) {
        // Quadratic piece against the deflation kernel (regular): do it
        // numerically over the same window, linear piece is odd again.
        auto quad_deflate = [&](double z) {
            const double u = z - z0;
            return 0.5 * f2 * u * u * k_deflate(u);
        };
        acc += gauss_panel<10>(quad_deflate, z0 - a, z0 + a);
    }

    // Mid region: sampled grid outside the window.
    auto plain = [&](double z) { return (f0 - f(z)) * (k_singular(z - z0) - k_deflate(z - z0)); };
    const auto& knots = f.spline().knots();
    acc += integrate_knotwise(plain, knots, z0 + a, lim_hi, z0);
    acc += integrate_knotwise(plain, knots, lim_lo, z0 - a, z0);

    if (!windowed) {
        // Beyond the grid: tail-model panels to the truncation radius,
        // algebraic closure past it.
        const TailInfo tail = resolve_tail(f, sch);
        const double T = sch.truncation_radius;
        const int n_far = std::max(24, sch.node_budget / 2);
        if (tail.active) {
            if (T > zhi) {
                auto model_hi = [&](double z) { return (f0 - f(z)) * k_singular(z - z0); };
                const double start = std::max(zhi, z0 + a);
                if (T > start) acc += integrate_ladder(model_hi, start, T, n_far);
                acc += (f0 - tail.lim_plus) * std::pow(T - z0, -two_s) / two_s +
                       tail.c_plus * algebraic_tail_series(T, z0, tail.p, 1.0 + two_s);
            }
            if (-T < zlo) {
                auto model_lo = [&](double v) { return (f0 - f(-v)) * k_singular(-v - z0); };
                const double end = std::min(zlo, z0 - a);
                if (-T < end) acc += integrate_ladder(model_lo, -end, T, n_far);
                acc += (f0 - tail.lim_minus) * std::pow(T + z0, -two_s) / two_s -
                       tail.c_minus * algebraic_tail_series(T, -z0, tail.p, 1.0 + two_s);
            }
        }
    }

    const double c1s = normalization_constant(1, s).value;
    return c1s * acc;
}

} // namespace

double frac_laplacian_1d(const Sampled1D& f, double z0, FracOrder s,
                         const QuadratureScheme& scheme) {
    return frac1d_core(f, z0, s, scheme, {});
}

double frac_laplacian_1d_checked(const Sampled1D& f, double z0, FracOrder s,
                                 const QuadratureScheme& scheme, double tol) {
    const double coarse = frac1d_core(f, z0, s, scheme, {});
    const double fine = frac1d_core(f, z0, s, scheme.refined(), {});
    const double scale = std::max({1.0, std::abs(coarse), std::abs(fine)});
    if (std::abs(fine - coarse) > tol * scale)
        throw NonConvergence("frac_laplacian_1d: refinement changed the value by " +
                             std::to_string(std::abs(fine - coarse)));
    return fine;
}

double frac1d_window_flat(const Sampled1D& f, double z0, FracOrder s, double R1,
                          const QuadratureScheme& scheme) {
    if (!(R1 > 0.0)) throw std::invalid_argument("frac1d_window_flat: R1 must be > 0");
    Frac1DOptions opt;
    opt.window_R1 = R1;
    return frac1d_core(f, z0, s, scheme, opt);
}

double reduce_kernel_integral(const KernelReduction& kind, double zeta, FracOrder s,
                              const QuadratureScheme& scheme) {
    scheme.validate();
    if (zeta == 0.0)
        throw std::invalid_argument("reduce_kernel_integral: zeta must be nonzero");
    const double two_s = s.two_s();
    const double az = std::abs(zeta);

    double m = 1.0, q = 3.0 + two_s, front = 2.0 * kPi;
    switch (kind.kind) {
        case KernelReduction::Kind::plain:
            break;
        case KernelReduction::Kind::quadratic_moment:
            if (kind.moment_axis != 1 && kind.moment_axis != 2)
                throw std::invalid_argument("reduce_kernel_integral: moment axis must be 1 or 2");
            m = 3.0;
            q = 5.0 + two_s;
            front = kPi; // angular average of y_i^2 is rho^2/2
            break;
        case KernelReduction::Kind::alpha_moment:
            if (!(kind.alpha > 0.0 && kind.alpha < two_s - 1.0))
                throw std::invalid_argument(
                    "reduce_kernel_integral: alpha must lie in (0, 2s-1)");
            m = 1.0 + kind.alpha;
            break;
    }

    auto integrand = [&](double rho) {
        return std::pow(rho, m) * std::pow(rho * rho + zeta * zeta, -0.5 * q);
    };

    const int n1 = std::max(16, scheme.node_budget / 2);
    const int n2 = std::max(24, scheme.node_budget / 2);
    double acc = 0.0;
    // Smooth bump region, then geometric decay region.
    const double split = 8.0 * az;
    const double h = split / n1;
    for (int i = 0; i < n1; ++i) acc += gauss_panel<10>(integrand, i * h, (i + 1) * h);
    const double T = std::max(scheme.truncation_radius, 128.0 * az);
    acc += integrate_ladder(integrand, split, T, n2);
    // Algebraic closure: (1 + z^2/rho^2)^{-q/2} expanded, four terms.
    double coeff = 1.0, z2k = 1.0;
    for (int k = 0; k < 4; ++k) {
        acc += coeff * z2k * std::pow(T, m - q + 1.0 - 2.0 * k) / (q - m - 1.0 + 2.0 * k);
        coeff *= -(0.5 * q + k) / (k + 1.0);
        z2k *= zeta * zeta;
    }
    return front * acc;
}

} // namespace fraccat
