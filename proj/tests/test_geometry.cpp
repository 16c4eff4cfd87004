#include "doctest.h"

#include "fraccat/errors.hpp"
#include "fraccat/geometry.hpp"

#include <cmath>
#include <random>

using namespace fraccat;

namespace {

const LayerProfile& layer075() {
    static const LayerProfile p = solve_layer(FracOrder(0.75), 80.0, 801, 1e-10);
    return p;
}

double fd_divform(const RadialFn& F, double r, double h) {
    auto flux = [&](double rr) {
        const double d = F.d1(rr);
        return rr * d / std::sqrt(1.0 + d * d);
    };
    return (flux(r + h) - flux(r - h)) / (2.0 * h * r);
}

} // namespace

TEST_CASE("catenoid arc closed forms") {
    CHECK(catenoid_arc(1.0).F == doctest::Approx(0.0));
    CHECK_FALSE(catenoid_arc(1.0).derivatives_valid);
    CHECK(catenoid_arc(std::cosh(1.0)).F == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(catenoid_arc(0.5), std::invalid_argument);
    // F(r) = log(2r) + O(r^-2)
    CHECK(std::abs(catenoid_arc(100.0).F - std::log(200.0)) < 1e-4);
}

TEST_CASE("catenoid is minimal: H = 0 to 1e-10") {
    const RadialFn fc = RadialFn::catenoid();
    for (double r : {1.1, 2.0, 10.0, 100.0}) {
        const auto c = curvatures(fc, r);
        CHECK(std::abs(c.H) < 1e-10);
        CHECK(std::abs(c.kappa1 + 1.0 / (r * r)) < 1e-10);
        CHECK(std::abs(c.kappa2 - 1.0 / (r * r)) < 1e-10);
    }
}

TEST_CASE("flat plane has zero curvature") {
    const RadialFn flat = RadialFn::constant(3.0);
    const auto c = curvatures(flat, 2.0);
    CHECK(c.kappa1 == 0.0);
    CHECK(c.kappa2 == 0.0);
    CHECK(c.H == 0.0);
}

TEST_CASE("divergence form equals kappa1+kappa2 = 2H") {
    const RadialFn fc = RadialFn::catenoid();
    const RadialFn pw = RadialFn::power_law(1.7, 0.8);
    for (double r : {1.5, 2.0, 7.0, 40.0}) {
        for (const RadialFn* F : {&fc, &pw}) {
            const auto c = curvatures(*F, r);
            const double dv = mean_curvature_divform(*F, r);
            CHECK(dv == doctest::Approx(c.kappa1 + c.kappa2).epsilon(1e-8));
            CHECK(dv == doctest::Approx(fd_divform(*F, r, 1e-5 * r)).epsilon(1e-5));
        }
    }
}

TEST_CASE("self-similar power law solves F'' + F'/r = F^{-2s}") {
    const double s = 0.75, two_s = 1.5;
    const double beta = 2.0 / (2.0 * s + 1.0);
    const double A = std::pow((2.0 * s + 1.0) / 2.0, beta);
    const RadialFn F = RadialFn::power_law(A, beta);
    for (double r : {1.0, 3.0, 10.0, 55.0}) {
        const double lap = F.d2(r) + F.d1(r) / r;
        CHECK(lap == doctest::Approx(std::pow(F(r), -two_s)).epsilon(1e-8));
    }
}

TEST_CASE("neck expression: cosh neck is exactly minimal, cylinder is -1") {
    for (double z : {0.0, 0.3, 1.2, 2.5}) {
        CHECK(std::abs(neck_mean_curvature(std::cosh(z), std::sinh(z), std::cosh(z))) < 1e-10);
    }
    CHECK(neck_mean_curvature(1.0, 0.0, 0.0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(neck_mean_curvature(-1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("neck expression against a finite-difference oracle") {
    // cosh perturbed by 1e-3 z^2, sampled
    std::vector<double> zg, gv;
    for (int i = 0; i <= 400; ++i) {
        const double z = 3.0 * i / 400.0;
        zg.push_back(z);
        gv.push_back(std::cosh(z) + 1e-3 * z * z);
    }
    CubicSpline G(zg, gv);
    for (double z : {0.5, 1.0, 2.0}) {
        const double h = 1e-4;
        auto flux = [&](double t) {
            const double d = G.deriv(t);
            return d / std::sqrt(1.0 + d * d);
        };
        const double fd = (flux(z + h) - flux(z - h)) / (2.0 * h) -
                          1.0 / (G.eval(z) * std::sqrt(1.0 + G.deriv(z) * G.deriv(z)));
        CHECK(neck_mean_curvature(G, z) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("fermi coordinates: on-surface points project to themselves") {
    const FermiChart chart = FermiChart::catenoid(0.02);
    for (double r : {60.0, 100.0, 300.0}) {
        const Eigen::Vector3d x = chart.surface_point(r, 0.7);
        const auto fc = chart.fermi_coordinates(x);
        CHECK(std::abs(fc.z) < 1e-9 * r);
        CHECK((fc.y_proj - x).norm() < 1e-8 * r);
    }
}

TEST_CASE("fermi round trip at random tube points") {
    const FermiChart chart = FermiChart::catenoid(0.02);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> ur(51.0, 400.0), ut(0.0, 6.28),
        uz(-0.9, 0.9);
    for (int i = 0; i < 100; ++i) {
        const double r = ur(rng), th = ut(rng);
        const double z = uz(rng) * chart.tube_halfwidth();
        const Eigen::Vector3d y0 = chart.surface_point(r, th);
        const Eigen::Vector3d x = y0 + z * chart.unit_normal(r, th);
        const auto fc = chart.fermi_coordinates(x);
        const double scale = std::max(1.0, x.norm());
        CHECK(std::abs(fc.z - z) < 1e-9 * scale);
        CHECK((fc.y_proj - y0).norm() < 1e-8 * scale);
        const Eigen::Vector3d back =
            fc.y_proj + fc.z * chart.unit_normal(fc.r_base, std::atan2(x[1], x[0]));
        CHECK((back - x).norm() < 1e-9 * scale);
    }
}

TEST_CASE("fermi coordinates: constructed (y0, t) recovered") {
    const FermiChart chart = FermiChart::catenoid(0.02);
    const double r = 120.0, th = 1.1;
    const double t = 0.3 * chart.tube_halfwidth();
    const Eigen::Vector3d y0 = chart.surface_point(r, th);
    const Eigen::Vector3d x = y0 + t * chart.unit_normal(r, th);
    const auto fc = chart.fermi_coordinates(x);
    CHECK(fc.z == doctest::Approx(t).epsilon(1e-9));
    CHECK((fc.y_proj - y0).norm() < 1e-9 * x.norm());
}

TEST_CASE("fermi distance against a brute-force surface scan") {
    const FermiChart chart = FermiChart::catenoid(0.05);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> ur(25.0, 120.0), uz(-0.5, 0.5);
    for (int i = 0; i < 12; ++i) {
        const double rq = ur(rng);
        const double z = uz(rng) * chart.tube_halfwidth();
        const Eigen::Vector3d x =
            chart.surface_point(rq, 0.0) + z * chart.unit_normal(rq, 0.0);
        const auto fc = chart.fermi_coordinates(x);
        double dmin = 1e300;
        const double w = chart.waist_radius();
        for (int k = 0; k <= 400000; ++k) {
            const double r = w + 200.0 * k / 400000.0;
            const double dr = std::hypot(x[0], x[1]) - r;
            const double dz = x[2] - chart.F_eps(r);
            dmin = std::min(dmin, dr * dr + dz * dz);
        }
        CHECK(std::abs(fc.z) == doctest::Approx(std::sqrt(dmin)).epsilon(1e-6));
    }
}

TEST_CASE("out-of-tube and on-axis queries are signalled") {
    const FermiChart chart = FermiChart::catenoid(0.02);
    CHECK_THROWS_AS(chart.fermi_coordinates(Eigen::Vector3d(3000.0, 0.0, 0.0)),
                    OutOfTube);
    CHECK_THROWS_AS(chart.fermi_coordinates(Eigen::Vector3d(0.0, 0.0, 1.0)), OutOfTube);
}

TEST_CASE("curvature jacobian: flat chart, catenoid FD oracle") {
    // flat plane: J = 1 identically
    FermiChart flat(RadialFn::constant(5.0), 0.1);
    CHECK(flat.curvature_jacobian(2.0, 0.4) == doctest::Approx(1.0));

    // catenoid at eps-scale 1: r = 2, z = 0.1, FD determinant of Psi(r,theta,z)
    const FermiChart chart = FermiChart::catenoid(1.0);
    const double r = 2.0, z = 0.1, h = 1e-5;
    auto Psi = [&](double rr, double th, double zz) -> Eigen::Vector3d {
        return chart.surface_point(rr, th) + zz * chart.unit_normal(rr, th);
    };
    Eigen::Matrix3d D;
    D.col(0) = (Psi(r + h, 0.0, z) - Psi(r - h, 0.0, z)) / (2.0 * h);
    D.col(1) = (Psi(r, h, z) - Psi(r, -h, z)) / (2.0 * h);
    D.col(2) = (Psi(r, 0.0, z + h) - Psi(r, 0.0, z - h)) / (2.0 * h);
    const double F1 = chart.dF_eps(r);
    const double area = r * std::sqrt(1.0 + F1 * F1);
    const double fd = std::abs(D.determinant()) / area;
    CHECK(chart.curvature_jacobian(r, z) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("tangent chart: origin data and g-expansion order") {
    const FermiChart chart = FermiChart::catenoid(1.0);
    const TangentChart tc(chart, 3.0);
    CHECK(std::abs(tc.g(0.0, 0.0)) < 1e-12);
    CHECK(tc.Dg(0.0, 0.0).norm() < 1e-9);
    // principal frame: g(y) = (k1 y1^2 + k2 y2^2)/2 + O(|y|^{2+alpha})
    double prev_err = 0.0;
    std::vector<double> errs;
    for (double h : {0.4, 0.2, 0.1}) {
        const double g = tc.g(h, h * 0.5);
        const double quad = 0.5 * (tc.kappa1() * h * h + tc.kappa2() * 0.25 * h * h);
        errs.push_back(std::abs(g - quad));
        (void)prev_err;
    }
    // expansion order >= 2 + alpha for any alpha < 1; smooth case gives ~3
    const double order01 = std::log2(errs[0] / errs[1]);
    const double order12 = std::log2(errs[1] / errs[2]);
    CHECK(order01 > 2.5);
    CHECK(order12 > 2.5);
}

TEST_CASE("tangent chart jacobian matches the FD determinant of Phi") {
    const FermiChart chart = FermiChart::catenoid(1.0);
    const TangentChart tc(chart, 2.0);
    const double y1 = 0.15, y2 = -0.1, z = 0.12, h = 3e-5;
    Eigen::Matrix3d D;
    D.col(0) = (tc.Phi(y1 + h, y2, z) - tc.Phi(y1 - h, y2, z)) / (2.0 * h);
    D.col(1) = (tc.Phi(y1, y2 + h, z) - tc.Phi(y1, y2 - h, z)) / (2.0 * h);
    D.col(2) = (tc.Phi(y1, y2, z + h) - tc.Phi(y1, y2, z - h)) / (2.0 * h);
    CHECK(std::abs(D.determinant()) ==
          doctest::Approx(tc.jacobian(y1, y2, z)).epsilon(1e-6));
}

TEST_CASE("kernel expansion: flat chart is exact, catenoid bounded and small") {
    const FracOrder s(0.75);
    FermiChart flat(RadialFn::constant(2.0), 0.5);
    const TangentChart ft(flat, 4.0);
    const auto ke0 = kernel_expansion_check(ft, 0.2, -0.1, {0.15, 0.1}, s, 0.4);
    CHECK(ke0.exact == doctest::Approx(ke0.expanded).epsilon(1e-12));

    const FermiChart cat = FermiChart::catenoid(1.0);
    const TangentChart tc(cat, 3.0);
    const auto ke = kernel_expansion_check(tc, 0.1, -0.1, {0.1, 0.0}, s, 0.4);
    CHECK(std::abs(ke.exact - ke.expanded) / ke.exact < 1e-2);
    CHECK(std::abs(ke.exact - ke.expanded) <= 10.0 * ke.bound);
}

TEST_CASE("kernel expansion deviation shrinks at least quadratically") {
    const FracOrder s(0.75);
    const FermiChart cat = FermiChart::catenoid(1.0);
    const TangentChart tc(cat, 3.0);
    std::vector<double> rel;
    for (double lam : {0.1, 0.05, 0.025}) {
        const auto ke = kernel_expansion_check(tc, lam, -lam, {lam, 0.5 * lam}, s, 0.4);
        rel.push_back(std::abs(ke.exact - ke.expanded) / ke.exact);
    }
    CHECK(std::log2(rel[0] / rel[1]) > 1.8);
    CHECK(std::log2(rel[1] / rel[2]) > 1.8);
}

TEST_CASE("approximate solution: regional values") {
    const double eps = 0.02;
    const ApproxSolution u(FermiChart::catenoid(eps), layer075(), CutoffPair{});

    // on the upper leaf in the near region: u* = w(0) = 0
    const double r_on = 120.0;
    CHECK(std::abs(u.eval_halfplane(r_on, u.chart().F_eps(r_on))) < 1e-10);

    // small |x'|, large x3 (through the neck): u* = +1
    CHECK(u.eval_halfplane(10.0, 500.0) == doctest::Approx(1.0));
    CHECK(u.eval_halfplane(0.0, 300.0) == doctest::Approx(1.0));

    // far out between the leaves: u* close to -1 with the two-leaf correction
    const double r_far = 4.5 * 10.0 / eps; // beyond 4 R_bar / eps
    const double mid = u.eval_halfplane(r_far, 0.0);
    const double Fv = u.chart().F_eps(r_far);
    const auto& w = u.w();
    const double predicted = 2.0 * w(-Fv * (1.0 + 0.0)) + 1.0;
    CHECK(mid == doctest::Approx(predicted).epsilon(1e-2));
    CHECK(mid > -1.0);
    CHECK(mid < -0.9);
}

TEST_CASE("approximate solution: reflection symmetry in x3") {
    const double eps = 0.02;
    const ApproxSolution u(FermiChart::catenoid(eps), layer075(), CutoffPair{});
    for (double rho : {30.0, 80.0, 300.0, 2500.0}) {
        for (double xi : {0.0, 3.0, 40.0}) {
            CHECK(u.eval_halfplane(rho, xi) == u.eval_halfplane(rho, -xi));
        }
    }
}

TEST_CASE("R0 and R1 window functions") {
    const double eps = 0.02;
    const ApproxSolution u(FermiChart::catenoid(eps), layer075(), CutoffPair{});
    // near region: R0 = 1, R1 = delta_bar/eps
    CHECK(u.R0(100.0) == doctest::Approx(1.0));
    CHECK(u.R1(100.0) == doctest::Approx(0.1 / eps));
    // far region: R0 = F_eps^{2s}, R1 = F_eps^tau
    const double r = 6.0 * 10.0 / eps;
    CHECK(u.R0(r) == doctest::Approx(std::pow(u.chart().F_eps(r), 1.5)).epsilon(1e-10));
    CHECK(u.R1(r) == doctest::Approx(std::pow(u.chart().F_eps(r), 1.30)).epsilon(1e-10));
    for (double rho : {20.0, 400.0, 1000.0, 3000.0}) CHECK(u.R0(rho) >= 1.0);
}
