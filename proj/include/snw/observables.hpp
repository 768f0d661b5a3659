#pragma once

#include "snw/field.hpp"
#include "snw/kernel.hpp"
#include "snw/potential.hpp"

namespace snw {

// Energy split of the conserved functional:
//   T = 1/2 int |grad psi|^2   (spectral)
//   W = 1/2 int V_eff |psi|^2  (V_eff = kernel * |psi|^2; the 1/2 counts each
//                               pair once)
//   E = T + W
struct EnergyBreakdown {
    double kinetic = 0.0;
    double interaction = 0.0;
    double total() const { return kinetic + interaction; }
};

// <psi| -i grad |psi> for a normalized field, via the Fourier multiplier k.
Vec3 momentum_expectation(const ComplexField& psi);

Vec3 centroid(const ComplexField& psi);
double rms_width(const ComplexField& psi);  // sqrt(<|x - <x>|^2>)

double kinetic_energy(const ComplexField& psi);

EnergyBreakdown energy_breakdown(const ComplexField& psi, PotentialSolver& solver);
EnergyBreakdown energy_breakdown(const ComplexField& psi, const Kernel& kernel);

// Lagrange-multiplier eigenvalue of the stationary equation: the potential
// enters at full weight here, so eps = T + 2W (not the energy E = T + W).
double eigenvalue(const ComplexField& psi, PotentialSolver& solver);
double eigenvalue(const ComplexField& psi, const Kernel& kernel);

}  // namespace snw
