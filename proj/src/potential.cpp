#include "snw/potential.hpp"

#include <cmath>

#include "snw/errors.hpp"

namespace snw {

std::vector<double> hockney_kernel_spectrum(const UniformGrid& grid,
                                            const Kernel& kernel, RealFft3d& fft) {
    const int n = grid.n, m = fft.n();
    if (m != 2 * n) throw validation_error("kernel spectrum: fft size must be 2n");
    const double h = grid.h;

    // Sample the kernel on the padded offset box: per-axis signed offsets
    // j*h for j <= n, (j - 2n)*h beyond, which covers every pair offset
    // between points of the n^3 box without periodic aliasing.
    std::vector<double> pad(fft.real_size());
    std::vector<std::complex<double>> spec(fft.complex_size());
    const double origin = kernel.strength * newtonian_origin_cell_value(h);
    std::vector<double> offs(m);
    for (int j = 0; j < m; ++j) offs[j] = (j <= n ? j : j - m) * h;
    for (int jx = 0; jx < m; ++jx)
        for (int jy = 0; jy < m; ++jy)
            for (int jz = 0; jz < m; ++jz) {
                const double s = std::sqrt(offs[jx] * offs[jx] + offs[jy] * offs[jy] +
                                           offs[jz] * offs[jz]);
                double val;
                if (s == 0.0 && kernel.variant == Kernel::Variant::newtonian)
                    val = origin;
                else
                    val = kernel.value(s);
                pad[(std::size_t(jx) * m + jy) * m + jz] = val;
            }
    fft.forward(pad.data(), spec.data());

    // The sampled kernel is even under the padded wrap, so its DFT is real;
    // keep the real part with the h^3 quadrature weight folded in. With the
    // normalized inverse transform, V = inverse(DFT(rho) * DFT(K) h^3) is then
    // exactly sum_y K(x-y) rho(y) h^3.
    std::vector<double> out(spec.size());
    const double w = h * h * h;
    for (std::size_t i = 0; i < spec.size(); ++i) out[i] = spec[i].real() * w;
    return out;
}

PotentialSolver::PotentialSolver(const UniformGrid& grid, const Kernel& kernel)
    : grid_(grid), kernel_(kernel), npad_(2 * grid.n) {
    if (kernel_.is_none()) return;  // solve() short-circuits

    fft_ = std::make_unique<RealFft3d>(npad_);
    pad_.assign(fft_->real_size(), 0.0);
    spec_.assign(fft_->complex_size(), {0.0, 0.0});
    kernel_spectrum_ = hockney_kernel_spectrum(grid_, kernel_, *fft_);
}

RealField PotentialSolver::solve(const RealField& density) {
    if (!(density.grid == grid_))
        throw validation_error("potential solve: density grid mismatch");
    if (kernel_.is_none()) return RealField(grid_);

    double total = 0.0;
    for (double v : density.values) {
        if (v < -1e-12) throw validation_error("potential solve: density must be >= 0");
        total += v;
    }
    total *= grid_.cell_volume();
    if (total > 1.0 + 1e-6)
        throw validation_error("potential solve: density integrates to > 1");

    const int n = grid_.n, m = npad_;
    std::fill(pad_.begin(), pad_.end(), 0.0);
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double* src = &density.values[grid_.index(ix, iy, 0)];
            double* dst = &pad_[(std::size_t(ix) * m + iy) * m];
            for (int iz = 0; iz < n; ++iz) dst[iz] = src[iz];
        }
    fft_->forward(pad_.data(), spec_.data());
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] *= kernel_spectrum_[i];
    fft_->inverse(spec_.data(), pad_.data());

    RealField out(grid_);
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double* src = &pad_[(std::size_t(ix) * m + iy) * m];
            double* dst = &out.values[grid_.index(ix, iy, 0)];
            for (int iz = 0; iz < n; ++iz) dst[iz] = src[iz];
        }
    return out;
}

RealField solve_potential(const RealField& density, const Kernel& kernel) {
    PotentialSolver solver(density.grid, kernel);
    return solver.solve(density);
}

RadialProfile radial_potential(const RadialProfile& density) {
    const auto& r = density.r;
    const auto& rho = density.values;
    if (r.size() < 2 || r.size() != rho.size())
        throw validation_error("radial_potential: need matching meshes, >= 2 points");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1]))
            throw validation_error("radial_potential: mesh must be strictly increasing");
    for (double v : rho)
        if (v < 0) throw validation_error("radial_potential: density must be >= 0");

    const std::size_t np = r.size();
    // enclosed mass m(r) and the outer-shell integral, cumulative trapezoids
    std::vector<double> w4pi_r2(np), w4pi_r(np), mass(np), outer(np);
    for (std::size_t i = 0; i < np; ++i) {
        w4pi_r2[i] = 4.0 * M_PI * r[i] * r[i] * rho[i];
        w4pi_r[i] = 4.0 * M_PI * r[i] * rho[i];
    }
    mass[0] = 0.0;  // treats the region inside r[0] as empty
    for (std::size_t i = 1; i < np; ++i)
        mass[i] = mass[i - 1] + 0.5 * (r[i] - r[i - 1]) * (w4pi_r2[i - 1] + w4pi_r2[i]);
    outer[np - 1] = 0.0;
    for (std::size_t i = np - 1; i > 0; --i)
        outer[i - 1] = outer[i] + 0.5 * (r[i] - r[i - 1]) * (w4pi_r[i - 1] + w4pi_r[i]);

    RadialProfile V;
    V.r = r;
    V.values.resize(np);
    for (std::size_t i = 0; i < np; ++i) {
        const double inner = (r[i] > 0) ? mass[i] / r[i] : 0.0;
        V.values[i] = -(inner + outer[i]);
    }
    return V;
}

}  // namespace snw
