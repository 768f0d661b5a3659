#pragma once

#include <array>
#include <complex>
#include <vector>

#include "snw/grid.hpp"

namespace snw {

using Vec3 = std::array<double, 3>;

// Sampled wavefunction psi(x) on a UniformGrid, row-major over (x,y,z).
struct ComplexField {
    UniformGrid grid;
    std::vector<std::complex<double>> values;

    ComplexField() = default;
    explicit ComplexField(const UniformGrid& g)
        : grid(g), values(g.size()) {}

    std::complex<double>& at(int ix, int iy, int iz) {
        return values[grid.index(ix, iy, iz)];
    }
    const std::complex<double>& at(int ix, int iy, int iz) const {
        return values[grid.index(ix, iy, iz)];
    }
};

// Real samples: density |psi|^2 or a potential.
struct RealField {
    UniformGrid grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(const UniformGrid& g) : grid(g), values(g.size(), 0.0) {}
};

// Normalized Gaussian wave-packet. `sigma` is the per-axis standard deviation
// of the density |psi|^2, so psi = (2 pi sigma^2)^{-3/4} exp(-|x-c|^2/(4 sigma^2)).
ComplexField gaussian_packet(const UniformGrid& grid, double sigma,
                             const Vec3& center = {0, 0, 0});

RealField density(const ComplexField& psi);

double norm_squared(const ComplexField& psi);   // sum |psi|^2 h^3
double integral(const RealField& f);            // sum f h^3

// Rescales so that norm_squared(result) == target. Throws on a zero field.
ComplexField normalize(const ComplexField& psi, double target = 1.0);
void normalize_in_place(ComplexField& psi, double target = 1.0);

// Multiplies by exp(i v.x) pointwise.
void apply_plane_phase(ComplexField& psi, const Vec3& v);

// Circular shift by an integer lattice vector (units of grid cells).
ComplexField shift_lattice(const ComplexField& psi, const std::array<int, 3>& cells);

// Exact trigonometric translation psi(x) -> psi(x - r) for arbitrary r.
ComplexField shift_spectral(const ComplexField& psi, const Vec3& r);

// max |psi| on the six boundary faces divided by max |psi| overall;
// fields are trustworthy only when this is below ~1e-8.
double boundary_amplitude_ratio(const ComplexField& psi);

// Trigonometric resampling onto a grid with n_new points per axis at the same
// extent (spectrum zero-padding / truncation). Used to warm-start fine-grid
// solves from coarse ones.
ComplexField resample_spectral(const ComplexField& psi, int n_new);

}  // namespace snw
