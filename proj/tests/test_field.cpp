#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "snw/errors.hpp"
#include "snw/fft.hpp"
#include "snw/field.hpp"
#include "snw/observables.hpp"

using namespace snw;

TEST_CASE("grid validation and coordinates") {
    CHECK_THROWS_AS(UniformGrid(12, 0.5), validation_error);
    CHECK_THROWS_AS(UniformGrid(4, 0.5), validation_error);
    CHECK_THROWS_AS(UniformGrid(64, -1.0), validation_error);
    UniformGrid g(16, 0.5);
    CHECK(g.coord(8) == 0.0);
    CHECK(g.coord(0) == -4.0);
    CHECK(g.extent() == doctest::Approx(8.0));
    CHECK(g.freq(0) == 0.0);
    CHECK(g.freq(1) == doctest::Approx(2 * std::numbers::pi / 8.0));
    CHECK(g.freq(8) == doctest::Approx(-8 * 2 * std::numbers::pi / 8.0));  // Nyquist bin
    CHECK(g.freq(15) == doctest::Approx(-2 * std::numbers::pi / 8.0));
}

TEST_CASE("norm of zero field and of a well-resolved Gaussian") {
    UniformGrid g(16, 1.0);
    ComplexField zero(g);
    CHECK(norm_squared(zero) == 0.0);

    // sigma = 8h with extent 16 sigma: midpoint quadrature is spectrally exact
    UniformGrid fine(128, 0.5);
    ComplexField psi = gaussian_packet(fine, 4.0);
    CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("norm scales bilinearly") {
    UniformGrid g(32, 0.5);
    ComplexField psi = gaussian_packet(g, 2.0);
    const double n0 = norm_squared(psi);
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::complex<double> c(uni(rng), uni(rng));
        ComplexField scaled = psi;
        for (auto& v : scaled.values) v *= c;
        CHECK(norm_squared(scaled) == doctest::Approx(std::norm(c) * n0).epsilon(1e-12));
    }
}

TEST_CASE("normalize") {
    UniformGrid g(32, 0.5);
    ComplexField psi = gaussian_packet(g, 2.0);
    for (auto& v : psi.values) v *= 2.0;  // norm^2 = 4
    ComplexField unit = normalize(psi, 1.0);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        CHECK(unit.values[i] == psi.values[i] * 0.5);

    ComplexField half = normalize(psi, 0.5);  // two-soliton lobe target
    CHECK(norm_squared(half) == doctest::Approx(0.5).epsilon(1e-12));

    ComplexField once = normalize(psi, 1.0);
    ComplexField twice = normalize(once, 1.0);
    for (std::size_t i = 0; i < once.values.size(); ++i)
        CHECK(std::abs(twice.values[i] - once.values[i]) <= 1e-15 * std::abs(once.values[i]));

    ComplexField zero(g);
    CHECK_THROWS_AS(normalize(zero, 1.0), validation_error);
}

TEST_CASE("momentum of real fields vanishes; plane-wave phases shift it exactly") {
    UniformGrid g(64, 0.5);
    ComplexField psi = gaussian_packet(g, 2.0);
    Vec3 p = momentum_expectation(psi);
    for (double c : p) CHECK(std::abs(c) < 1e-12);

    // k on the momentum lattice
    const double dk = 2.0 * std::numbers::pi / g.extent();
    Vec3 k = {3 * dk, -2 * dk, 5 * dk};
    apply_plane_phase(psi, k);
    p = momentum_expectation(psi);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(p[i] - k[i]) < 1e-10);
}

TEST_CASE("centroid and rms width of Gaussians") {
    UniformGrid g(64, 0.5);
    const double sigma = 2.0;
    ComplexField psi = gaussian_packet(g, sigma);
    Vec3 c = centroid(psi);
    for (double x : c) CHECK(std::abs(x) < 1e-10);
    CHECK(rms_width(psi) ==
          doctest::Approx(oracles::Gaussian::rms_width(sigma)).epsilon(1e-3));

    // lattice translation: centroid moves by exactly the shift, nothing else
    ComplexField moved = shift_lattice(psi, {6, -4, 2});
    Vec3 c2 = centroid(moved);
    CHECK(c2[0] == doctest::Approx(6 * g.h).epsilon(1e-10));
    CHECK(c2[1] == doctest::Approx(-4 * g.h).epsilon(1e-10));
    CHECK(c2[2] == doctest::Approx(2 * g.h).epsilon(1e-10));
    CHECK(rms_width(moved) == doctest::Approx(rms_width(psi)).epsilon(1e-12));
    CHECK(norm_squared(moved) == doctest::Approx(norm_squared(psi)).epsilon(1e-12));

    // two symmetric half-norm lobes: centroid at the origin by symmetry
    ComplexField lobes(g);
    ComplexField a = gaussian_packet(g, 1.0, {-6, 0, 0});
    ComplexField b = gaussian_packet(g, 1.0, {6, 0, 0});
    for (std::size_t i = 0; i < lobes.values.size(); ++i)
        lobes.values[i] = a.values[i] + b.values[i];
    normalize_in_place(lobes);
    for (double x : centroid(lobes)) CHECK(std::abs(x) < 1e-10);
}

TEST_CASE("energy breakdown of a Gaussian against the analytic values") {
    UniformGrid g(64, 0.5);
    const double sigma = 2.0;
    ComplexField psi = normalize(gaussian_packet(g, sigma));
    EnergyBreakdown e = energy_breakdown(psi, Kernel::newtonian());
    CHECK(e.kinetic ==
          doctest::Approx(oracles::Gaussian::kinetic(sigma)).epsilon(0.005));
    CHECK(e.interaction ==
          doctest::Approx(oracles::Gaussian::interaction(sigma)).epsilon(0.005));
    CHECK(e.total() == e.kinetic + e.interaction);
    CHECK(e.interaction < 0);

    // G = 0: no interaction at all
    EnergyBreakdown free = energy_breakdown(psi, Kernel::none());
    CHECK(free.interaction == 0.0);
    CHECK(free.kinetic == doctest::Approx(e.kinetic).epsilon(1e-13));

    // a plane-wave phase adds exactly k^2/2 of kinetic energy and leaves the
    // density (hence W) untouched
    const double dk = 2.0 * std::numbers::pi / g.extent();
    Vec3 k = {2 * dk, 0, 0};
    ComplexField boosted = psi;
    apply_plane_phase(boosted, k);
    EnergyBreakdown eb = energy_breakdown(boosted, Kernel::newtonian());
    CHECK(eb.kinetic - e.kinetic ==
          doctest::Approx(0.5 * k[0] * k[0]).epsilon(1e-10));
    CHECK(eb.interaction == doctest::Approx(e.interaction).epsilon(1e-12));
}

TEST_CASE("W depends on the density only") {
    UniformGrid g(32, 0.7);
    ComplexField psi = normalize(gaussian_packet(g, 2.0));
    EnergyBreakdown base = energy_breakdown(psi, Kernel::newtonian());
    // apply a random position-dependent pure phase
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    ComplexField twisted = psi;
    for (auto& v : twisted.values) {
        const double th = uni(rng);
        v *= std::complex<double>(std::cos(th), std::sin(th));
    }
    EnergyBreakdown e = energy_breakdown(twisted, Kernel::newtonian());
    CHECK(e.interaction == doctest::Approx(base.interaction).epsilon(1e-12));
}

TEST_CASE("quadrature equals the zero-frequency Fourier coefficient") {
    UniformGrid g(32, 0.6);
    ComplexField psi = normalize(gaussian_packet(g, 1.8), 0.7);
    RealField rho = density(psi);
    // DFT of the density at k = 0 is the plain sample sum
    ComplexField spec(g);
    for (std::size_t i = 0; i < rho.values.size(); ++i) spec.values[i] = rho.values[i];
    Fft3d fft(g.n);
    fft.forward(spec.values.data());
    const double coeff = spec.values[0].real() / g.size();  // normalized coefficient
    CHECK(norm_squared(psi) ==
          doctest::Approx(coeff * std::pow(g.extent(), 3)).epsilon(1e-12));
}

TEST_CASE("spectral kinetic energy matches a finite-difference gradient at O(h^2)") {
    const double sigma = 1.5;
    auto fd_kinetic = [&](const ComplexField& psi) {
        const UniformGrid& g = psi.grid;
        double sum = 0;
        auto wrap = [&](int i) { return (i + g.n) % g.n; };
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz) {
                    const auto gx = (psi.at(wrap(ix + 1), iy, iz) -
                                     psi.at(wrap(ix - 1), iy, iz)) / (2 * g.h);
                    const auto gy = (psi.at(ix, wrap(iy + 1), iz) -
                                     psi.at(ix, wrap(iy - 1), iz)) / (2 * g.h);
                    const auto gz = (psi.at(ix, iy, wrap(iz + 1)) -
                                     psi.at(ix, iy, wrap(iz - 1))) / (2 * g.h);
                    sum += std::norm(gx) + std::norm(gy) + std::norm(gz);
                }
        return 0.5 * sum * g.cell_volume();
    };

    UniformGrid coarse(64, 0.5), fine(128, 0.25);
    ComplexField pc = normalize(gaussian_packet(coarse, sigma));
    ComplexField pf = normalize(gaussian_packet(fine, sigma));
    const double tc = kinetic_energy(pc), tf = kinetic_energy(pf);
    const double dc = std::abs(fd_kinetic(pc) - tc) / tc;
    const double df = std::abs(fd_kinetic(pf) - tf) / tf;
    CHECK(dc < 0.03);
    CHECK(dc / df == doctest::Approx(4.0).epsilon(0.2));  // second-order signature
}

TEST_CASE("spectral resampling preserves the field") {
    UniformGrid g(32, 1.0);
    ComplexField psi = normalize(gaussian_packet(g, 2.5));
    ComplexField up = resample_spectral(psi, 64);
    CHECK(up.grid.n == 64);
    CHECK(up.grid.h == doctest::Approx(0.5));
    // the upsampled field interpolates the same trigonometric polynomial, so
    // it reproduces the original samples at the shared points
    for (int ix = 0; ix < 32; ++ix)
        for (int iy = 0; iy < 32; ++iy)
            for (int iz = 0; iz < 32; ++iz)
                CHECK(std::abs(up.at(2 * ix, 2 * iy, 2 * iz) - psi.at(ix, iy, iz)) < 1e-12);
    CHECK(norm_squared(up) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rms_width(up) == doctest::Approx(rms_width(psi)).epsilon(1e-8));
}

TEST_CASE("boundary amplitude ratio flags undecayed fields") {
    UniformGrid g(32, 0.5);
    CHECK(boundary_amplitude_ratio(gaussian_packet(g, 1.0)) < 1e-8);
    CHECK(boundary_amplitude_ratio(gaussian_packet(g, 4.0)) > 1e-3);
}
