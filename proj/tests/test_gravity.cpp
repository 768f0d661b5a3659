#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "snw/errors.hpp"
#include "snw/field.hpp"
#include "snw/kernel.hpp"
#include "snw/potential.hpp"

using namespace snw;

TEST_CASE("two-sphere kernel closed form") {
    const double R = 1.7;
    // contact value -(6/5)/R, exact
    CHECK(sphere_kernel_value(0.0, R) == doctest::Approx(-1.2 / R).epsilon(1e-15));

    // curvature at the origin: V(s) - V(0) -> s^2/(2R^3)
    const double s = 1e-3 * R;
    const double curv = (sphere_kernel_value(s, R) - sphere_kernel_value(0.0, R)) / (s * s);
    CHECK(curv == doctest::Approx(0.5 / (R * R * R)).epsilon(1e-3));

    // seam at s = 2R: the interior polynomial meets -1/s with matching slope
    const double xi = 2.0;
    const double inner = -(1.0 / R) * (6.0 / 5.0 - xi * xi / 2.0 + 3.0 * std::pow(xi, 3) / 16.0 -
                                       std::pow(xi, 5) / 160.0);
    CHECK(inner == doctest::Approx(-1.0 / (2.0 * R)).epsilon(1e-15));
    const double d = 1e-6 * R;
    const double slope_in = (sphere_kernel_value(2 * R - d, R) -
                             sphere_kernel_value(2 * R - 2 * d, R)) / d;
    const double slope_out = (sphere_kernel_value(2 * R + 2 * d, R) -
                              sphere_kernel_value(2 * R + d, R)) / d;
    CHECK(slope_in == doctest::Approx(slope_out).epsilon(1e-4));

    CHECK_THROWS_AS(sphere_kernel_value(-1.0, R), validation_error);
}

TEST_CASE("two-sphere kernel against the double-quadrature oracle") {
    const double R = 1.0;
    for (double xi : {0.5, 1.0, 1.5}) {
        const double quad = oracles::sphere_pair_energy(xi * R, R);
        CHECK(sphere_kernel_value(xi * R, R) == doctest::Approx(quad).epsilon(1e-6));
    }
}

TEST_CASE("two-sphere kernel approaches the newtonian point law") {
    const double s = 2.5;
    for (double R : {1e-3 * s, 5e-4 * s}) {
        CHECK(std::abs(sphere_kernel_value(s, R) - (-1.0 / s)) < 1e-8);
    }
}

TEST_CASE("cell-average constant against the Duffy quadrature oracle") {
    const double c64 = oracles::cell_mean_inverse_r(64);
    const double c96 = oracles::cell_mean_inverse_r(96);
    CHECK(c64 == doctest::Approx(c96).epsilon(1e-12));  // quadrature has converged
    CHECK(cell_average_inverse_r(1.0) == doctest::Approx(c96).epsilon(1e-10));
    CHECK(cell_average_inverse_r(0.25) == doctest::Approx(4.0 * c96).epsilon(1e-10));
}

TEST_CASE("origin counterterm removes the O(h^2) defect of W") {
    // With the plain cell mean alone the sampled 1/s kernel leaves
    // W_disc - W_exact = alpha h^2 int rho^2 (alpha ~ 0.229); the counterterm
    // in newtonian_origin_cell_value cancels it. Measured the leftover here.
    const double sigma = 2.0;
    UniformGrid g(64, 0.5);
    ComplexField psi = normalize(gaussian_packet(g, sigma));
    RealField rho = density(psi);
    RealField v = solve_potential(rho, Kernel::newtonian());
    double w = 0;
    for (std::size_t i = 0; i < rho.values.size(); ++i) w += v.values[i] * rho.values[i];
    w *= 0.5 * g.cell_volume();
    const double exact = oracles::Gaussian::interaction(sigma);
    CHECK(std::abs(w - exact) / std::abs(exact) < 3e-5);
}

TEST_CASE("free-space potential of a compact source has the right far field") {
    UniformGrid g(64, 0.5);
    const double sigma = 2 * g.h;
    ComplexField psi = normalize(gaussian_packet(g, sigma));
    RealField rho = density(psi);
    RealField v = solve_potential(rho, Kernel::newtonian());
    // no periodic images: -1/|x| out to 40% of the half-box
    for (double r : {10 * sigma, 11.0, 12.5}) {
        const int i = g.n / 2 + int(std::round(r / g.h));
        const double x = g.coord(i);
        CHECK(v.values[g.index(i, g.n / 2, g.n / 2)] ==
              doctest::Approx(-1.0 / x).epsilon(0.01));
    }
}

TEST_CASE("potential of a Gaussian source at its center") {
    UniformGrid g(64, 0.5);
    const double sigma = 2.0;
    ComplexField psi = normalize(gaussian_packet(g, sigma));
    RealField v = solve_potential(density(psi), Kernel::newtonian());
    CHECK(v.values[g.index(32, 32, 32)] ==
          doctest::Approx(-std::sqrt(2.0 / std::numbers::pi) / sigma).epsilon(0.005));
    // attractive everywhere
    for (double val : v.values) CHECK(val <= 0.0);
}

TEST_CASE("potential of a uniform ball at its center") {
    UniformGrid g(64, 0.4);
    const double a = 4.0;
    RealField rho(g);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const double x = g.coord(ix), y = g.coord(iy), z = g.coord(iz);
                if (x * x + y * y + z * z <= a * a)
                    rho.values[g.index(ix, iy, iz)] = 1.0;
            }
    double total = integral(rho);
    for (auto& val : rho.values) val /= total;  // unit mass
    RealField v = solve_potential(rho, Kernel::newtonian());
    CHECK(v.values[g.index(32, 32, 32)] == doctest::Approx(-1.5 / a).epsilon(0.01));
}

TEST_CASE("solver linearity and strength homogeneity") {
    UniformGrid g(32, 0.6);
    ComplexField pa = normalize(gaussian_packet(g, 1.2, {2, 0, -1}));
    ComplexField pb = normalize(gaussian_packet(g, 1.8, {-3, 1, 0}));
    RealField ra = density(pa), rb = density(pb);
    RealField sum(g);
    for (std::size_t i = 0; i < sum.values.size(); ++i)
        sum.values[i] = 0.4 * ra.values[i] + 0.6 * rb.values[i];

    PotentialSolver solver(g, Kernel::newtonian());
    RealField va = solver.solve(ra), vb = solver.solve(rb), vs = solver.solve(sum);
    for (std::size_t i = 0; i < vs.values.size(); ++i)
        CHECK(vs.values[i] ==
              doctest::Approx(0.4 * va.values[i] + 0.6 * vb.values[i]).epsilon(1e-12));

    RealField v2 = solve_potential(ra, Kernel::newtonian(2.5));
    for (std::size_t i = 0; i < v2.values.size(); ++i)
        CHECK(v2.values[i] == doctest::Approx(2.5 * va.values[i]).epsilon(1e-12));
}

TEST_CASE("3-D solver agrees with the radial Newton-shell solver") {
    UniformGrid g(64, 0.5);
    const double sigma = 2.0;
    ComplexField psi = normalize(gaussian_packet(g, sigma));
    RealField v3 = solve_potential(density(psi), Kernel::newtonian());

    RadialProfile prof;
    const int nr = 4000;
    const double rmax = g.extent();
    const double norm = std::pow(2 * std::numbers::pi * sigma * sigma, -1.5);
    for (int i = 1; i <= nr; ++i) {
        const double r = i * (rmax / nr);
        prof.r.push_back(r);
        prof.values.push_back(norm * std::exp(-r * r / (2 * sigma * sigma)));
    }
    RadialProfile vr = radial_potential(prof);

    for (double r : {0.5, 2.0, 4.0, 7.5}) {  // up to extent/4
        const int i3 = g.n / 2 + int(std::round(r / g.h));
        const double x = g.coord(i3);
        const std::size_t ir = std::size_t(std::round(x / (rmax / nr))) - 1;
        CHECK(v3.values[g.index(i3, 32, 32)] ==
              doctest::Approx(vr.values[ir]).epsilon(0.005));
    }
}

TEST_CASE("radial potential closed forms") {
    // narrow shell ~ point mass: -1/r outside
    RadialProfile pt;
    const double s0 = 0.05;
    for (int i = 1; i <= 20000; ++i) {
        const double r = i * 1e-3;
        pt.r.push_back(r);
        pt.values.push_back(std::exp(-r * r / (2 * s0 * s0)));
    }
    double mass = 0;  // normalize to unit mass by trapezoid
    for (std::size_t i = 1; i < pt.r.size(); ++i)
        mass += 0.5 * (pt.r[i] - pt.r[i - 1]) *
                (4 * std::numbers::pi * pt.r[i] * pt.r[i] * pt.values[i] +
                 4 * std::numbers::pi * pt.r[i - 1] * pt.r[i - 1] * pt.values[i - 1]);
    for (auto& v : pt.values) v /= mass;
    RadialProfile vp = radial_potential(pt);
    for (double r : {1.0, 5.0, 15.0}) {
        const std::size_t i = std::size_t(r / 1e-3) - 1;
        CHECK(vp.values[i] == doctest::Approx(-1.0 / pt.r[i]).epsilon(1e-4));
        // Gauss law: r |V| recovers the enclosed (total) mass
        CHECK(pt.r[i] * std::abs(vp.values[i]) == doctest::Approx(1.0).epsilon(1e-4));
    }

    // uniform ball: interior profile -(3a^2 - r^2)/(2a^3)
    RadialProfile ball;
    const double a = 2.0;
    for (int i = 1; i <= 40000; ++i) {
        const double r = i * 1e-4;
        ball.r.push_back(r);
        ball.values.push_back(r <= a ? 3.0 / (4.0 * std::numbers::pi * a * a * a) : 0.0);
    }
    RadialProfile vb = radial_potential(ball);
    for (double r : {0.5, 1.0, 1.9}) {
        const std::size_t i = std::size_t(r / 1e-4) - 1;
        CHECK(vb.values[i] ==
              doctest::Approx(-(3 * a * a - r * r) / (2 * a * a * a)).epsilon(1e-5));
    }

    RadialProfile bad;
    bad.r = {1.0, 0.5};
    bad.values = {1.0, 1.0};
    CHECK_THROWS_AS(radial_potential(bad), validation_error);
}

TEST_CASE("solver input validation") {
    UniformGrid g(16, 1.0), g2(32, 1.0);
    PotentialSolver solver(g, Kernel::newtonian());
    RealField wrong(g2);
    CHECK_THROWS_AS(solver.solve(wrong), validation_error);

    RealField rho(g);
    rho.values[0] = 10.0;  // integrates to 10 > 1
    CHECK_THROWS_AS(solver.solve(rho), validation_error);

    RealField neg(g);
    neg.values[0] = -1.0;
    CHECK_THROWS_AS(solver.solve(neg), validation_error);

    // kernel none short-circuits to a zero field
    RealField ok(g);
    ok.values[g.index(8, 8, 8)] = 0.5;
    RealField z = solve_potential(ok, Kernel::none());
    for (double v : z.values) CHECK(v == 0.0);
}
