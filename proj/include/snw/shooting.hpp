#pragma once

#include "snw/observables.hpp"
#include "snw/potential.hpp"

namespace snw {

// Independent spherically-symmetric ground-state solver, used as the oracle
// for the grid minimizer. Writes the stationary problem in terms of
// u(r) = sqrt(4 pi) r phi(r) (so int u^2 dr = 1, rho = (u/r)^2 / 4 pi):
//
//   u'' = 2 (V - eps) u,   V = radial_potential of rho,
//
// solved by Numerov outward/inward integration matched at the outer turning
// point, bisecting eps on the nodeless branch, iterated with the potential to
// self-consistency. Shares nothing with the FFT path except the Newton-shell
// radial_potential.
struct ShootingOptions {
    double rmax = 64.0;
    int npoints = 16000;
    int max_scf = 200;
    double scf_tol = 1e-13;   // relative change of eps between SCF iterations
    double mix = 0.65;        // density under-relaxation
};

struct ShootingResult {
    double epsilon = 0.0;
    EnergyBreakdown energy;
    double width = 0.0;       // rms width sqrt(int r^2 u^2 dr)
    RadialProfile u;          // normalized radial amplitude
    int scf_iterations = 0;
    int nodes = 0;            // interior nodes of u (0 on the ground branch)
};

ShootingResult radial_shooting_oracle(const ShootingOptions& opt = {});

}  // namespace snw
