#include "fraccat/geometry.hpp"

#include "fraccat/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fraccat {

CurvatureData curvatures(const RadialFn& F, double r) {
    if (!(r > F.r_min()) || !(r < F.r_max()))
        throw std::invalid_argument("curvatures: r outside the (open) profile domain");
    const double F1 = F.d1(r), F2 = F.d2(r);
    if (!std::isfinite(F1) || !std::isfinite(F2))
        throw std::invalid_argument("curvatures: derivatives unavailable at r");
    const double q = 1.0 + F1 * F1;
    CurvatureData c{};
    c.kappa1 = F2 / (q * std::sqrt(q));
    c.kappa2 = F1 / (r * std::sqrt(q));
    c.H = 0.5 * (c.kappa1 + c.kappa2);
    // Lipschitz proxy for the curvature modulus, from one-sided differences.
    const double h = 1e-4 * std::max(1.0, r);
    auto k = [&](double rr) {
        const double a = F.d1(rr), b = F.d2(rr);
        const double qq = 1.0 + a * a;
        return std::abs(b / (qq * std::sqrt(qq))) + std::abs(a / (rr * std::sqrt(qq)));
    };
    c.holder_bound = std::abs(k(r + h) - k(std::max(r - h, 0.5 * (r + F.r_min())))) / h;
    return c;
}

double mean_curvature_divform(const RadialFn& F, double r) {
    const double F1 = F.d1(r), F2 = F.d2(r);
    const double q = 1.0 + F1 * F1;
    return F2 / (q * std::sqrt(q)) + F1 / (r * std::sqrt(q));
}

double neck_mean_curvature(double G, double G1, double G2) {
    if (!(G > 0.0)) throw std::invalid_argument("neck_mean_curvature: G must be positive");
    const double q = 1.0 + G1 * G1;
    return G2 / (q * std::sqrt(q)) - 1.0 / (G * std::sqrt(q));
}

double neck_mean_curvature(const CubicSpline& G, double z) {
    return neck_mean_curvature(G.eval(z), G.deriv(z), G.deriv2(z));
}

// ---------------------------------------------------------------------------
// FermiChart

FermiChart::FermiChart(RadialFn F, double eps, double delta_bar, Leaf leaf)
    : F_(std::move(F)), eps_(eps), delta_bar_(delta_bar), leaf_(leaf) {
    if (!(eps > 0.0)) throw std::invalid_argument("FermiChart: eps must be > 0");
    // 45-degree hand-off radius: F' = 1, assuming F' decreasing (interface
    // profiles); if the slope never reaches 1 the graph covers the curve.
    const double lo = F_.r_min();
    double a = lo * (1.0 + 1e-9) + 1e-12;
    if (!(F_.d1(a) > 1.0)) {
        r_hand_ = lo;
        xi_hand_ = 0.0;
        return;
    }
    double b = std::max(2.0 * std::max(lo, 1e-6), a * 2.0);
    while (F_.d1(b) > 1.0 && b < 1e12) b *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        (F_.d1(m) > 1.0 ? a : b) = m;
    }
    r_hand_ = 0.5 * (a + b);
    xi_hand_ = F_(r_hand_);
}

FermiChart FermiChart::catenoid(double eps, double delta_bar) {
    FermiChart c(RadialFn::catenoid(), eps, delta_bar);
    NeckFn neck;
    neck.g = [](double xi) { return std::cosh(xi); };
    neck.g1 = [](double xi) { return std::sinh(xi); };
    neck.g2 = [](double xi) { return std::cosh(xi); };
    neck.xi_max = c.xi_hand_;
    c.set_neck(std::move(neck));
    return c;
}

void FermiChart::set_neck(NeckFn neck) {
    if (xi_hand_ <= 0.0)
        throw std::invalid_argument("FermiChart: profile has no 45-degree hand-off for a neck");
    neck_ = std::move(neck);
}

double FermiChart::waist_radius() const {
    if (!neck_) throw std::logic_error("FermiChart: no neck attached");
    return neck_->g(0.0) / eps_;
}

CurvatureData FermiChart::curvatures_at(double r) const {
    const double rh = r_hand_ / eps_;
    if (!neck_ || r >= rh * (1.0 - 1e-12)) {
        const double F1 = dF_eps(r), F2 = ddF_eps(r);
        const double q = 1.0 + F1 * F1;
        CurvatureData c{};
        c.kappa1 = F2 / (q * std::sqrt(q));
        c.kappa2 = F1 / (r * std::sqrt(q));
        c.H = 0.5 * (c.kappa1 + c.kappa2);
        c.holder_bound = 0.0;
        return c;
    }
    // Neck region: invert r = G_eps(xi), then the graph formulas transform to
    // k1 = -G''/(1+G'^2)^{3/2}, k2 = 1/(G sqrt(1+G'^2)) (same normal family).
    double lo = 0.0, hi = neck_->xi_max / eps_;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        (neck_->g(eps_ * m) / eps_ < r ? lo : hi) = m;
    }
    const double xi = 0.5 * (lo + hi);
    const double G = neck_->g(eps_ * xi) / eps_;
    const double G1 = neck_->g1(eps_ * xi);
    const double G2 = eps_ * neck_->g2(eps_ * xi);
    const double q = 1.0 + G1 * G1;
    CurvatureData c{};
    c.kappa1 = -G2 / (q * std::sqrt(q));
    c.kappa2 = 1.0 / (G * std::sqrt(q));
    c.H = 0.5 * (c.kappa1 + c.kappa2);
    c.holder_bound = 0.0;
    return c;
}

namespace {

struct Candidate {
    double d2 = std::numeric_limits<double>::infinity();
    double r = 0.0, xi = 0.0;
    bool on_neck = false;
};

} // namespace

FermiChart::Nearest FermiChart::nearest(double rho, double xi) const {
    const double rh = neck_ ? r_hand_ / eps_ : std::max(r_hand_, F_.r_min()) / eps_;
    const double r_lo = neck_ ? rh : r_min_eps() * (1.0 + 1e-12) + 1e-300;

    auto dist2_graph = [&](double r) {
        const double dr = rho - r, dxi = xi - F_eps(r);
        return dr * dr + dxi * dxi;
    };
    Candidate best;

    // Distance bound from simple candidates: the vertical drop (when rho is
    // in the graph domain) and the waist point.
    double dbound = std::numeric_limits<double>::infinity();
    if (rho >= r_lo) dbound = std::abs(xi - F_eps(rho));
    if (neck_) dbound = std::min(dbound, std::hypot(rho - waist_radius(), xi));
    dbound = std::min(dbound, std::hypot(rho - r_lo, xi - F_eps(r_lo)));
    dbound *= 1.0 + 1e-9;

    // Graph branch: stationarity phi(r) = (r-rho) + (F(r)-xi) F'(r) = 0 on a
    // bracket of width dbound around rho, plus the bracket endpoints.
    {
        const double a = std::max(r_lo, rho - dbound);
        const double b = std::max(a + 1e-12, rho + dbound);
        auto phi = [&](double r) { return (r - rho) + (F_eps(r) - xi) * dF_eps(r); };
        const int N = 40;
        double prev_r = a, prev_phi = phi(a);
        auto consider = [&](double r) {
            const double d2 = dist2_graph(r);
            if (d2 < best.d2) best = Candidate{d2, r, F_eps(r), false};
        };
        consider(a);
        consider(b);
        for (int i = 1; i <= N; ++i) {
            const double r = a + (b - a) * i / N;
            const double ph = phi(r);
            if (prev_phi == 0.0) consider(prev_r);
            if (prev_phi * ph < 0.0) {
                double lo2 = prev_r, hi2 = r;
                for (int it = 0; it < 90; ++it) {
                    const double m = 0.5 * (lo2 + hi2);
                    (phi(lo2) * phi(m) <= 0.0 ? hi2 : lo2) = m;
                }
                consider(0.5 * (lo2 + hi2));
            }
            prev_r = r;
            prev_phi = ph;
        }
    }

    // Neck branch.
    if (neck_) {
        const double xi_hi = neck_->xi_max / eps_;
        auto Gf = [&](double t) { return neck_->g(eps_ * t) / eps_; };
        auto G1f = [&](double t) { return neck_->g1(eps_ * t); };
        auto dist2_neck = [&](double t) {
            const double dr = rho - Gf(t), dxi = xi - t;
            return dr * dr + dxi * dxi;
        };
        const double db = std::min(dbound, std::sqrt(best.d2)) * (1.0 + 1e-9);
        const double a = std::clamp(xi - db, 0.0, xi_hi);
        const double b = std::clamp(xi + db, 0.0, xi_hi);
        auto psi = [&](double t) { return (t - xi) + (Gf(t) - rho) * G1f(t); };
        auto consider = [&](double t) {
            const double d2 = dist2_neck(t);
            if (d2 < best.d2) best = Candidate{d2, Gf(t), t, true};
        };
        consider(a);
        consider(b);
        if (b > a) {
            const int N = 24;
            double prev_t = a, prev_psi = psi(a);
            for (int i = 1; i <= N; ++i) {
                const double t = a + (b - a) * i / N;
                const double ps = psi(t);
                if (prev_psi * ps < 0.0) {
                    double lo2 = prev_t, hi2 = t;
                    for (int it = 0; it < 90; ++it) {
                        const double m = 0.5 * (lo2 + hi2);
                        (psi(lo2) * psi(m) <= 0.0 ? hi2 : lo2) = m;
                    }
                    consider(0.5 * (lo2 + hi2));
                }
                prev_t = t;
                prev_psi = ps;
            }
        }
    }

    Nearest out;
    out.r = best.r;
    out.xi = best.xi;
    out.on_neck = best.on_neck;
    Eigen::Vector2d nu;
    if (best.on_neck) {
        const double G1 = neck_->g1(eps_ * best.xi);
        nu = Eigen::Vector2d(-1.0, G1) / std::sqrt(1.0 + G1 * G1);
    } else {
        const double F1 = dF_eps(best.r);
        nu = Eigen::Vector2d(-F1, 1.0) / std::sqrt(1.0 + F1 * F1);
    }
    out.normal = nu;
    out.z = (rho - best.r) * nu[0] + (xi - best.xi) * nu[1];
    return out;
}

FermiChart::FermiCoords FermiChart::fermi_coordinates(const Eigen::Vector3d& x) const {
    const double rho = std::hypot(x[0], x[1]);
    const double sgn = leaf_sign();
    const Nearest nr = nearest(rho, sgn * x[2]);
    if (std::abs(nr.z) > tube_halfwidth())
        throw OutOfTube("fermi_coordinates: point outside the tubular neighborhood");
    if (rho < 1e-12 && nr.r > 1e-12)
        throw OutOfTube("fermi_coordinates: on-axis query has a degenerate projection");
    FermiCoords fc;
    const double ct = rho > 1e-12 ? x[0] / rho : 1.0;
    const double st = rho > 1e-12 ? x[1] / rho : 0.0;
    fc.y_proj = Eigen::Vector3d(nr.r * ct, nr.r * st, sgn * nr.xi);
    fc.z = nr.z;
    fc.r_base = nr.r;
    return fc;
}

double FermiChart::curvature_jacobian(double r, double z) const {
    const CurvatureData c = curvatures_at(r);
    const double f1 = 1.0 - c.kappa1 * z, f2 = 1.0 - c.kappa2 * z;
    if (!(f1 > 0.0) || !(f2 > 0.0))
        throw OutOfTube("curvature_jacobian: degenerate tube, (1-kappa z) <= 0");
    return f1 * f2;
}

Eigen::Vector3d FermiChart::surface_point(double r, double theta) const {
    const double sgn = leaf_sign();
    return {r * std::cos(theta), r * std::sin(theta), sgn * F_eps(r)};
}

Eigen::Vector3d FermiChart::unit_normal(double r, double theta) const {
    const double sgn = leaf_sign();
    const double F1 = dF_eps(r);
    const double q = std::sqrt(1.0 + F1 * F1);
    return {-F1 * std::cos(theta) / q, -F1 * std::sin(theta) / q, sgn / q};
}

// ---------------------------------------------------------------------------
// TangentChart

TangentChart::TangentChart(const FermiChart& chart, double r0) : chart_(&chart), r0_(r0) {
    p0_ = chart.surface_point(r0, 0.0);
    const double F1 = chart.dF_eps(r0);
    const double q = std::sqrt(1.0 + F1 * F1);
    e1_ = Eigen::Vector3d(1.0, 0.0, F1) / q; // meridian
    e2_ = Eigen::Vector3d(0.0, 1.0, 0.0);    // parallel
    nu0_ = chart.unit_normal(r0, 0.0);
    const CurvatureData c = chart.curvatures_at(r0);
    k1_ = c.kappa1;
    k2_ = c.kappa2;
}

TangentChart::ChartPoint TangentChart::solve(double y1, double y2) const {
    // Newton on (r, theta): tangent coordinates of the surface point match y.
    double r = r0_ + y1 / std::sqrt(1.0 + chart_->dF_eps(r0_) * chart_->dF_eps(r0_));
    double theta = y2 / std::max(r0_, 1e-12);
    for (int it = 0; it < 60; ++it) {
        const Eigen::Vector3d X = chart_->surface_point(r, theta);
        const double g1 = (X - p0_).dot(e1_) - y1;
        const double g2 = (X - p0_).dot(e2_) - y2;
        const double F1 = chart_->dF_eps(r);
        const double sgn = chart_->leaf_sign();
        const Eigen::Vector3d Xr(std::cos(theta), std::sin(theta), sgn * F1);
        const Eigen::Vector3d Xt(-r * std::sin(theta), r * std::cos(theta), 0.0);
        const double a = Xr.dot(e1_), b = Xt.dot(e1_);
        const double c = Xr.dot(e2_), d = Xt.dot(e2_);
        const double det = a * d - b * c;
        if (std::abs(det) < 1e-300) break;
        const double dr = (d * g1 - b * g2) / det;
        const double dt = (-c * g1 + a * g2) / det;
        r -= dr;
        theta -= dt;
        if (std::abs(dr) + std::abs(dt) * std::max(1.0, r) < 1e-13 * std::max(1.0, r)) break;
    }
    ChartPoint p;
    p.X = chart_->surface_point(r, theta);
    p.g = (p.X - p0_).dot(nu0_);
    p.r = r;
    p.theta = theta;
    return p;
}

Eigen::Vector2d TangentChart::Dg(double y1, double y2) const {
    const ChartPoint p = solve(y1, y2);
    const Eigen::Vector3d n = chart_->unit_normal(p.r, p.theta);
    const double dn = n.dot(nu0_);
    return {-n.dot(e1_) / dn, -n.dot(e2_) / dn};
}

std::pair<double, double> TangentChart::curvatures_at_offset(double y1) const {
    const ChartPoint p = solve(y1, 0.0);
    const CurvatureData c = chart_->curvatures_at(p.r);
    return {c.kappa1, c.kappa2};
}

Eigen::Vector3d TangentChart::surface_normal(double y1, double y2) const {
    const ChartPoint p = solve(y1, y2);
    return chart_->unit_normal(p.r, p.theta);
}

Eigen::Vector3d TangentChart::Phi(double y1, double y2, double z) const {
    const ChartPoint p = solve(y1, y2);
    return p.X + z * chart_->unit_normal(p.r, p.theta);
}

double TangentChart::jacobian(double y1, double y2, double z) const {
    const ChartPoint p = solve(y1, y2);
    const Eigen::Vector2d dg = Dg(y1, y2);
    const CurvatureData c = chart_->curvatures_at(p.r);
    const double f1 = 1.0 - c.kappa1 * z, f2 = 1.0 - c.kappa2 * z;
    if (!(f1 > 0.0) || !(f2 > 0.0))
        throw OutOfTube("TangentChart::jacobian: degenerate tube");
    return std::sqrt(1.0 + dg.squaredNorm()) * f1 * f2;
}

KernelExpansion kernel_expansion_check(const TangentChart& chart, double z0, double z,
                                       const Eigen::Vector2d& y, FracOrder s, double alpha) {
    const double two_s = s.two_s();
    const Eigen::Vector3d x0 = chart.base() + z0 * chart.normal0();
    const Eigen::Vector3d x = chart.Phi(y[0], y[1], z);
    const double rho2 = y.squaredNorm() + (z0 - z) * (z0 - z);
    const double flat = std::pow(rho2, -0.5 * (3.0 + two_s));

    KernelExpansion out;
    out.exact = std::pow((x0 - x).squaredNorm(), -0.5 * (3.0 + two_s));
    const double corr = 0.5 * (3.0 + two_s) * (z0 + z) *
                        (chart.kappa1() * y[0] * y[0] + chart.kappa2() * y[1] * y[1]) / rho2;
    out.expanded = flat * (1.0 + corr);

    // Local curvature magnitudes over a window of twice the tangent offset;
    // rotational symmetry makes them functions of the base radius alone.
    const double w = 2.0 * std::max(y.norm(), 1e-6);
    double k_sup = std::abs(chart.kappa1()) + std::abs(chart.kappa2());
    double k_hold = 0.0;
    for (int i = 1; i <= 4; ++i) {
        const double dr = w * i / 4.0;
        for (double sgn : {-1.0, 1.0}) {
            const auto [ka, kb] = chart.curvatures_at_offset(sgn * dr);
            k_sup = std::max(k_sup, std::abs(ka) + std::abs(kb));
            k_hold = std::max(k_hold, (std::abs(ka - chart.kappa1()) +
                                       std::abs(kb - chart.kappa2())) /
                                          std::pow(dr, alpha));
        }
    }
    const double y2 = y.squaredNorm();
    out.bound = flat *
                (k_hold * std::pow(y.norm(), 2.0 + alpha) * (std::abs(z) + std::abs(z0)) +
                 k_sup * k_sup * y2 * (y2 + z * z + z0 * z0)) /
                rho2;
    return out;
}

// ---------------------------------------------------------------------------
// ApproxSolution

ApproxSolution::ApproxSolution(FermiChart upper_chart, LayerProfile profile, CutoffPair cutoffs,
                               ApproxSolutionSpec spec)
    : chart_(std::move(upper_chart)),
      layer_(std::move(profile)),
      w_(layer_.sampled()),
      cut_(cutoffs),
      spec_(spec) {
    if (!chart_.has_neck())
        throw std::invalid_argument("ApproxSolution: the chart needs a neck branch");
    const double two_s = layer_.s.two_s();
    if (!(spec_.alpha_curv > 0.0 && spec_.alpha_curv < two_s - 1.0))
        throw std::invalid_argument("ApproxSolution: alpha must lie in (0, 2s-1)");
    if (!(spec_.tau > 1.0 && spec_.tau < 1.0 + spec_.alpha_curv / two_s))
        throw std::invalid_argument("ApproxSolution: tau must lie in (1, 1+alpha/(2s))");
}

double ApproxSolution::R0(double rho) const {
    const double eps = chart_.eps();
    const double c = cut_.chi(rho - spec_.R_bar / eps);
    if (c <= 0.0) return 1.0;
    const double F = chart_.F_eps(rho);
    return 1.0 + c * (std::pow(F, layer_.s.two_s()) - 1.0);
}

double ApproxSolution::R1(double rho) const {
    const double eps = chart_.eps();
    const double e = cut_.eta(rho - 2.0 * spec_.R_bar / eps + 2.0);
    const double inner = chart_.delta_bar() / eps;
    if (e >= 1.0) return inner;
    const double outer = std::pow(chart_.F_eps(rho), spec_.tau);
    return e * inner + (1.0 - e) * outer;
}

double ApproxSolution::outer_state(double rho, double xi) const {
    const double eps = chart_.eps();
    if (rho <= 1.0 / eps) return 1.0;
    return std::abs(xi) >= chart_.F_eps(rho) ? 1.0 : -1.0;
}

double ApproxSolution::z_plus(double rho, double xi) const {
    return chart_.nearest(rho, xi).z;
}

double ApproxSolution::eval_halfplane(double rho, double xi) const {
    const double eps = chart_.eps();
    const double axi = std::abs(xi); // the construction is even in x3
    const double zc = z_plus(rho, axi);
    const double blend = cut_.eta(eps * std::abs(zc) / (chart_.delta_bar() * R0(rho)));
    const double uo = outer_state(rho, axi);
    if (blend <= 0.0) return uo;
    // w(z) + chi (w(z+) + w(z-) + 1 - w(z)); here z = z+ on the upper chart.
    double inner = w_(zc);
    const double c = cut_.chi(rho - spec_.R_bar / eps);
    if (c > 0.0) inner += c * (w_(z_minus(rho, axi)) + 1.0);
    return blend * inner + (1.0 - blend) * uo;
}

double ApproxSolution::operator()(const Eigen::Vector3d& x) const {
    return eval_halfplane(std::hypot(x[0], x[1]), x[2]);
}

} // namespace fraccat
