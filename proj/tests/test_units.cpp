#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "snw/errors.hpp"
#include "snw/units.hpp"

using namespace snw;

TEST_CASE("natural units normalize to one") {
    PhysicalParams p{1.0, 1.0, 1.0, {}, {}};
    ScalingMap u = make_scaling(p);
    CHECK(u.length_unit == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u.time_unit == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u.energy_unit == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cgs length unit for a milligram object") {
    PhysicalParams p;
    p.M = 1e-3;
    // hbar^2/(G M^3) evaluated in cgs
    CHECK(make_scaling(p).length_unit == doctest::Approx(1.666e-38).epsilon(2e-3));
    CHECK(point_width_estimate(p) == make_scaling(p).length_unit);
}

TEST_CASE("unit-system identities hold for random parameters") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> expo(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        PhysicalParams p;
        p.hbar = std::pow(10.0, expo(rng));
        p.G = std::pow(10.0, expo(rng));
        p.M = std::pow(10.0, expo(rng));
        ScalingMap u = make_scaling(p);
        CHECK(u.time_unit * p.hbar / (p.M * u.length_unit * u.length_unit) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(u.time_unit * u.energy_unit / p.hbar == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(point_width_estimate(p) == u.length_unit);
    }
}

TEST_CASE("point width cubic mass scaling") {
    PhysicalParams p{1, 1, 1, {}, {}}, p2{1, 1, 2, {}, {}};
    CHECK(point_width_estimate(p) == doctest::Approx(1.0));
    CHECK(point_width_estimate(p2) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("point width of the unit sphere mass") {
    PhysicalParams p;
    p.M = 4.0 * M_PI / 3.0;  // sphere R = 1 cm, rho = 1 g/cm^3
    CHECK(point_width_estimate(p) == doctest::Approx(2.267e-49).epsilon(2e-3));
}

TEST_CASE("sphere width estimate") {
    PhysicalParams nat{1, 1, 1, {}, {}};
    CHECK(sphere_width_estimate(nat, 1.0) == doctest::Approx(1.0));
    // 3/4-power law forced by the formula
    CHECK(sphere_width_estimate(nat, 16.0) ==
          doctest::Approx(8.0 * sphere_width_estimate(nat, 1.0)).epsilon(1e-13));

    PhysicalParams p;
    p.M = 4.0 * M_PI / 3.0;
    CHECK(sphere_width_estimate(p, 1.0) == doctest::Approx(6.9e-13).epsilon(5e-3));
    // quartic relation ties the two estimates exactly
    const double s = sphere_width_estimate(p, 2.5);
    CHECK(std::pow(s, 4) ==
          doctest::Approx(point_width_estimate(p) * std::pow(2.5, 3)).epsilon(1e-12));
}

TEST_CASE("energy estimates") {
    PhysicalParams nat{1, 1, 1, {}, {}};
    CHECK(energy_estimate(nat, 2.0) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(energy_estimate(nat, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

    // the argmin of the pointlike estimate is 2 hbar^2/(G M^3): locate it by
    // golden-section scan, independent of calculus
    PhysicalParams p{1.0, 2.0, 0.5, {}, {}};
    double best_a = 0, best_e = 1e300;
    for (int i = 0; i < 200000; ++i) {
        const double a = 0.5 + i * 1e-4;
        const double e = energy_estimate(p, a);
        if (e < best_e) { best_e = e; best_a = a; }
    }
    const double expect = 2.0 * p.hbar * p.hbar / (p.G * p.M * p.M * p.M);
    CHECK(best_a == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("critical size for normal density") {
    CriticalSize c = critical_size(1.0);
    CHECK(c.r_c > 3e-6);
    CHECK(c.r_c < 3e-5);

    // independent route: bisection on a0(M(R)) - R = 0
    auto width_minus_r = [](double R) {
        PhysicalParams p;
        p.M = 4.0 * M_PI / 3.0 * std::pow(R, 3);
        return sphere_width_estimate(p, R) - R;
    };
    double lo = 1e-8, hi = 1e-2;
    REQUIRE(width_minus_r(lo) > 0);
    REQUIRE(width_minus_r(hi) < 0);
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        (width_minus_r(mid) > 0 ? lo : hi) = mid;
    }
    CHECK(c.r_c == doctest::Approx(lo).epsilon(1e-9));

    // both relations cross at a0 = R, so the reported values agree (the paper
    // quotes them as giving the same ~1e-5 cm); certainly within a factor 3
    CHECK(c.r_c_ref1 / c.r_c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("critical size density power law and monotonicity") {
    const double r1 = critical_size(1.0).r_c;
    const double r2 = critical_size(1e3).r_c;
    CHECK(r2 / r1 == doctest::Approx(std::pow(10.0, -0.9)).epsilon(1e-12));
    double prev = critical_size(0.01).r_c;
    for (double rho : {0.1, 1.0, 10.0, 100.0}) {
        const double rc = critical_size(rho).r_c;
        CHECK(rc < prev);
        prev = rc;
    }
}

TEST_CASE("validation rejects nonpositive parameters") {
    PhysicalParams p;
    p.M = -1.0;
    CHECK_THROWS_AS(make_scaling(p), validation_error);
    CHECK_THROWS_AS(critical_size(0.0), validation_error);
    PhysicalParams q;
    CHECK_THROWS_AS(sphere_width_estimate(q, -2.0), validation_error);
    CHECK_THROWS_AS(energy_estimate(q, 0.0), validation_error);
}
