#pragma once

#include <optional>

#include "snw/field.hpp"
#include "snw/kernel.hpp"
#include "snw/observables.hpp"

namespace snw {

// Normalized imaginary-time split-step descent parameters.
struct DescentSchedule {
    double dtau = 0.1;        // imaginary-time step; halved whenever the energy rises
    int max_iter = 50000;
    double tol = 1e-8;        // constrained gradient norm ||H psi - eps psi||_L2
    int check_every = 20;     // energy/residual monitoring stride
    bool coarse_start = true; // warm-start n >= 128 grids from an n/2 solve
    bool quiet = true;
};

struct GroundStateResult {
    ComplexField phi0;        // real nonnegative, norm^2 = 1, centroid recentered
    EnergyBreakdown energy;
    double epsilon = 0.0;     // T + 2W at convergence
    double width = 0.0;       // rms width
    int iterations = 0;
    double residual = 0.0;    // final ||H psi - eps psi||
    double boundary_ratio = 0.0;
};

// Minimizes E[psi] under norm^2 = 1 by imaginary-time split stepping with
// renormalization after every step. Throws no_ground_state_error for the
// `none` kernel (a free packet spreads without bound) and convergence_error
// if the residual tolerance is not reached.
GroundStateResult minimize(const UniformGrid& grid, const Kernel& kernel,
                           const ComplexField& init,
                           const DescentSchedule& schedule = {});

// Same, initialized from the Gaussian variational optimum.
GroundStateResult minimize(const UniformGrid& grid, const Kernel& kernel,
                           const DescentSchedule& schedule = {});

// Closed-form minimum of the energy over normalized Gaussian trial packets
// (sigma = per-axis density std):
//   newtonian, strength g:   E(s) = 3/(8 s^2) - g/(2 sqrt(pi) s)
//                            -> sigma* = 3 sqrt(pi)/(2g), E* = -g^2/(6 pi)
//   harmonic_sphere(R), g:   E(s) = 3/(8 s^2) - 3g/(5R) + 3 g s^2/(2 R^3)
//                            -> sigma* = (R^3/(4g))^{1/4}
// E* bounds the true ground-state energy from above. The harmonic optimum is
// in fact exact: the self-consistent potential of a centered packet is an
// oscillator well, whose ground state is the Gaussian at sigma*.
struct VariationalOptimum {
    double sigma_star;
    double energy_star;
};
VariationalOptimum gaussian_variational(const Kernel& kernel);

// Gaussian trial energy at arbitrary width (same closed forms, unminimized).
double gaussian_trial_energy(const Kernel& kernel, double sigma);

}  // namespace snw
