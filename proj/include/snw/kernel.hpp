#pragma once

#include <string>

namespace snw {

// Self-interaction law between mass elements, dimensionless units.
// The potential sourced by a density rho is V(x) = strength * (k * rho)(x)
// with pair kernel k(s):
//   newtonian:       -1/s
//   sphere(R):       exact mutual potential of two homogeneous spheres of
//                    radius R (equals -1/s for s >= 2R)
//   harmonic_sphere: (1/R)(-6/5 + (s/R)^2/2) for all s — the quadratic
//                    small-separation law of the sphere kernel applied
//                    globally, which makes the ground state exactly Gaussian
//   none:            0 (free particle, G = 0)
struct Kernel {
    enum class Variant { newtonian, sphere, harmonic_sphere, none };

    Variant variant = Variant::newtonian;
    double radius = 0.0;    // R for the sphere variants
    double strength = 1.0;  // = G M^2 in the chosen units

    static Kernel newtonian(double strength = 1.0);
    static Kernel sphere(double R, double strength = 1.0);
    static Kernel harmonic_sphere(double R, double strength = 1.0);
    static Kernel none();

    // Kernel value at pair separation s >= 0 (strength included). The
    // newtonian value diverges at s = 0; grid sampling handles that cell
    // separately (see potential.cpp).
    double value(double s) const;

    bool is_none() const { return variant == Variant::none; }
    // Everywhere-nonpositive kernels; they make bound states possible.
    bool attractive() const {
        return variant == Variant::newtonian || variant == Variant::sphere;
    }

    std::string name() const;
};

// Exact strength-1 two-homogeneous-spheres potential:
//   s <= 2R:  -(1/R)(6/5 - xi^2/2 + 3 xi^3/16 - xi^5/160),  xi = s/R
//   s >= 2R:  -1/s
// Continuous with continuous derivative at the seam s = 2R.
double sphere_kernel_value(double s, double R);

// Mean of 1/|r| over one cubic cell of side h.
double cell_average_inverse_r(double h);

// Origin-cell value for the sampled newtonian kernel (strength 1): the cell
// mean of -1/|r| plus a lattice counterterm that cancels the O(h^2) quadrature
// defect of the midpoint-sampled 1/s sum, which is exactly local in the
// density. See kernel.cpp for the constants.
double newtonian_origin_cell_value(double h);

}  // namespace snw
