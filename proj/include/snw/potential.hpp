#pragma once

#include <memory>
#include <vector>

#include "snw/fft.hpp"
#include "snw/field.hpp"
#include "snw/kernel.hpp"

namespace snw {

// Free-space convolution V = k * rho on the grid, by zero-padding to (2n)^3
// and multiplying with the transform of the sampled kernel (Hockney). The
// padded box represents every pair offset that occurs between points of the
// n^3 box, so the result carries no periodic images.
//
// A solver instance caches the kernel transform and FFT plans for one
// (grid, kernel) pair. Instances are not safe for concurrent use; parameter
// sweeps give each worker its own solver.
class PotentialSolver {
  public:
    PotentialSolver(const UniformGrid& grid, const Kernel& kernel);

    const UniformGrid& grid() const { return grid_; }
    const Kernel& kernel() const { return kernel_; }

    // density must be >= 0 and integrate to <= 1 + 1e-6. Returns the
    // attractive potential term of the wave equation (<= 0 everywhere for the
    // newtonian kernel).
    RealField solve(const RealField& density);

  private:
    UniformGrid grid_;
    Kernel kernel_;
    int npad_;
    std::unique_ptr<RealFft3d> fft_;
    std::vector<double> kernel_spectrum_;  // real part of DFT(kernel), with
                                           // h^3/(2n)^3 quadrature+norm folded in
    std::vector<double> pad_;
    std::vector<std::complex<double>> spec_;
};

// One-shot convenience wrapper.
RealField solve_potential(const RealField& density, const Kernel& kernel);

// Real spectrum of the kernel sampled on the (2n)^3 offset box, with the h^3
// quadrature weight folded in: inverse-transforming DFT(rho_padded) times this
// gives sum_y K(x-y) rho(y) h^3. Shared by PotentialSolver and the
// cross-coupling diagnostic.
std::vector<double> hockney_kernel_spectrum(const UniformGrid& grid,
                                            const Kernel& kernel, RealFft3d& fft);

// Spherically symmetric density/potential samples on an increasing radial mesh.
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> values;
};

// Newton-shell potential of a spherically symmetric density (strength 1):
// V(r) = -[ m(r)/r + int_r^rmax 4 pi r' rho(r') dr' ],  m(r) = enclosed mass.
// The mesh must be strictly increasing; used by the ground-state oracle.
RadialProfile radial_potential(const RadialProfile& density);

}  // namespace snw
