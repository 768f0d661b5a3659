#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "snw/errors.hpp"
#include "snw/ground_state.hpp"
#include "snw/shooting.hpp"

using namespace snw;

// Reference values from the radial shooting oracle at its finest settings
// (rmax 64, 32000 points), stable to ~1e-7 under mesh refinement.
namespace ref {
constexpr double epsilon0 = -0.16276922;
constexpr double energy0 = -0.05425640;
constexpr double width0 = 4.6352133;
}  // namespace ref

TEST_CASE("gaussian variational optimum, newtonian kernel") {
    VariationalOptimum opt = gaussian_variational(Kernel::newtonian());
    CHECK(opt.sigma_star == doctest::Approx(1.5 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(opt.energy_star == doctest::Approx(-1.0 / (6.0 * std::numbers::pi)).epsilon(1e-14));

    // upper bound is attainable, so it must lie below the coarser estimate
    CHECK(opt.energy_star < -1.0 / (12.0 * std::numbers::pi));

    // independent check: evaluate the trial energy on the grid over a sigma
    // scan and locate the minimum numerically
    UniformGrid g(64, 0.5);
    double best_s = 0, best_e = 1e300;
    for (double s = 2.0; s <= 3.4; s += 0.1) {
        ComplexField psi = normalize(gaussian_packet(g, s));
        const double e = energy_breakdown(psi, Kernel::newtonian()).total();
        CHECK(e == doctest::Approx(gaussian_trial_energy(Kernel::newtonian(), s)).epsilon(1e-4));
        if (e < best_e) { best_e = e; best_s = s; }
    }
    CHECK(best_s == doctest::Approx(opt.sigma_star).epsilon(0.05));
    CHECK(best_e == doctest::Approx(opt.energy_star).epsilon(1e-3));

    // stationarity of the one-parameter family gives the virial split exactly
    const double T = 3.0 / (8.0 * opt.sigma_star * opt.sigma_star);
    const double W = opt.energy_star - T;
    CHECK(2.0 * T == doctest::Approx(-W).epsilon(1e-13));
}

TEST_CASE("gaussian variational optimum, harmonic kernel") {
    const double R = 20.0;
    VariationalOptimum opt = gaussian_variational(Kernel::harmonic_sphere(R));
    CHECK(opt.sigma_star == doctest::Approx(std::pow(R * R * R / 4.0, 0.25)).epsilon(1e-14));
    // constant offset -(3/5)/R is part of the energy
    const double T = 3.0 / (8.0 * opt.sigma_star * opt.sigma_star);
    const double W = -3.0 / (5.0 * R) + 3.0 * opt.sigma_star * opt.sigma_star / (2.0 * R * R * R);
    CHECK(opt.energy_star == doctest::Approx(T + W).epsilon(1e-13));

    CHECK_THROWS_AS(gaussian_variational(Kernel::none()), no_ground_state_error);
}

TEST_CASE("eigenvalue is T + 2W") {
    UniformGrid g(64, 0.5);
    const double sigma = 2.0;
    ComplexField psi = normalize(gaussian_packet(g, sigma));
    // no kernel: eps reduces to the kinetic energy
    CHECK(eigenvalue(psi, Kernel::none()) ==
          doctest::Approx(oracles::Gaussian::kinetic(sigma)).epsilon(1e-4));
    // newtonian: analytic Gaussian value
    const double expect = oracles::Gaussian::kinetic(sigma) +
                          2.0 * oracles::Gaussian::interaction(sigma);
    CHECK(eigenvalue(psi, Kernel::newtonian()) == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("radial shooting oracle") {
    ShootingOptions opt;
    opt.rmax = 48.0;
    opt.npoints = 8000;
    ShootingResult res = radial_shooting_oracle(opt);

    CHECK(res.nodes == 0);  // ground branch
    CHECK(res.epsilon == doctest::Approx(ref::epsilon0).epsilon(1e-5));
    CHECK(res.energy.total() == doctest::Approx(ref::energy0).epsilon(1e-5));
    CHECK(res.width == doctest::Approx(ref::width0).epsilon(1e-5));

    // virial on the oracle output
    CHECK(std::abs(2.0 * res.energy.kinetic - std::abs(res.energy.interaction)) /
              res.energy.kinetic < 1e-3);
    // consistency between the eigenvalue and the energy split
    CHECK(res.epsilon ==
          doctest::Approx(res.energy.kinetic + 2.0 * res.energy.interaction).epsilon(1e-6));

    // mesh refinement moves epsilon by less than 1e-4 relative
    ShootingOptions fine = opt;
    fine.npoints = 16000;
    ShootingResult res2 = radial_shooting_oracle(fine);
    CHECK(std::abs(res2.epsilon - res.epsilon) / std::abs(res2.epsilon) < 1e-4);
}

TEST_CASE("minimize requires an attractive kernel") {
    UniformGrid g(16, 1.0);
    CHECK_THROWS_AS(minimize(g, Kernel::none()), no_ground_state_error);
    ComplexField zero(g);
    CHECK_THROWS_AS(minimize(g, Kernel::newtonian(), zero), validation_error);
}

TEST_CASE("harmonic kernel ground state is the exact Gaussian") {
    const double R = 20.0;
    const Kernel kernel = Kernel::harmonic_sphere(R);
    const double sigma_exact = std::pow(R * R * R / 4.0, 0.25);  // ~6.69
    UniformGrid g(32, 2.0);  // extent 64 ~ 9.6 sigma
    DescentSchedule sched;
    sched.tol = 1e-7;
    GroundStateResult res =
        minimize(g, kernel, gaussian_packet(g, 1.3 * sigma_exact), sched);
    CHECK(res.width ==
          doctest::Approx(std::sqrt(3.0) * sigma_exact).epsilon(0.01));
    CHECK(norm_squared(res.phi0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("newtonian ground state on a modest grid") {
    UniformGrid g(64, 0.7);
    DescentSchedule sched;
    sched.tol = 1e-6;
    GroundStateResult res = minimize(g, Kernel::newtonian(), sched);

    // constraint and phase invariants
    CHECK(norm_squared(res.phi0) == doctest::Approx(1.0).epsilon(1e-10));
    double max_im = 0, max_re = 0;
    for (const auto& v : res.phi0.values) {
        max_im = std::max(max_im, std::abs(v.imag()));
        max_re = std::max(max_re, std::abs(v.real()));
    }
    CHECK(max_im / max_re < 1e-8);
    for (double c : centroid(res.phi0)) CHECK(std::abs(c) < g.h);

    // oracle equivalence at this resolution
    CHECK(res.epsilon == doctest::Approx(ref::epsilon0).epsilon(0.005));
    CHECK(res.energy.total() == doctest::Approx(ref::energy0).epsilon(0.005));
    CHECK(res.width == doctest::Approx(ref::width0).epsilon(0.01));

    // virial identities at convergence
    const double T = res.energy.kinetic, W = res.energy.interaction, E = res.energy.total();
    CHECK(std::abs(2 * T - std::abs(W)) / T < 1e-3);
    CHECK(std::abs(E + T) / T < 1e-3);
    CHECK(std::abs(res.epsilon - 3 * E) / std::abs(E) < 1e-3);

    // strictly below the Gaussian variational bound (and the coarser one)
    CHECK(E < gaussian_variational(Kernel::newtonian()).energy_star);
    CHECK(E < -1.0 / (12.0 * std::numbers::pi));

    CHECK(res.residual < sched.tol);
}

TEST_CASE("minimize is deterministic") {
    UniformGrid g(32, 1.2);
    DescentSchedule sched;
    sched.tol = 1e-4;
    GroundStateResult a = minimize(g, Kernel::newtonian(), sched);
    GroundStateResult b = minimize(g, Kernel::newtonian(), sched);
    REQUIRE(a.phi0.values.size() == b.phi0.values.size());
    for (std::size_t i = 0; i < a.phi0.values.size(); ++i)
        CHECK(a.phi0.values[i] == b.phi0.values[i]);
    CHECK(a.width == b.width);

    // scaling exactness: converting the same dimensionless width through two
    // unit systems reproduces the (M'/M)^-3 ratio to float precision
    PhysicalParams p1;
    p1.M = 2.0e-3;
    PhysicalParams p2;
    p2.M = 6.0e-3;
    const double w1 = a.width * make_scaling(p1).length_unit;
    const double w2 = b.width * make_scaling(p2).length_unit;
    CHECK(w1 / w2 == doctest::Approx(std::pow(p2.M / p1.M, 3)).epsilon(1e-6));
}
