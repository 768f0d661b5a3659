#pragma once

#include <optional>

namespace snw {

// cgs values of the physical constants used throughout (the critical-size
// figures in the literature are cgs numbers).
namespace cgs {
inline constexpr double hbar = 1.054571817e-27;  // erg s
inline constexpr double G = 6.67430e-8;          // cm^3 g^-1 s^-2
}  // namespace cgs

// Physical description of one macroscopic object, cgs units.
struct PhysicalParams {
    double hbar = cgs::hbar;          // erg s
    double G = cgs::G;                // cm^3 g^-1 s^-2
    double M = 1.0;                   // g
    std::optional<double> R;          // sphere radius, cm
    std::optional<double> rho;        // mass density, g/cm^3

    void validate() const;            // throws validation_error
};

// Conversion factors between cgs and the dimensionless system in which the
// wave equation reads  i dpsi/dtau = -1/2 lap psi - (|psi|^2 * 1/r) psi.
// The length unit is exactly the natural width hbar^2/(G M^3) of a pointlike
// object's ground-state wave-packet.
struct ScalingMap {
    double length_unit;  // cm
    double time_unit;    // s
    double energy_unit;  // erg
};

ScalingMap make_scaling(const PhysicalParams& params);

// hbar^2/(G M^3): natural wave-packet width of a free pointlike object.
double point_width_estimate(const PhysicalParams& params);

// (hbar^2/(G M^3))^{1/4} R^{3/4}: natural width for a homogeneous sphere of
// radius R. Only meaningful when the result is << R; `regime_ok` reports that.
double sphere_width_estimate(const PhysicalParams& params, double R);
bool sphere_width_regime_ok(const PhysicalParams& params, double R,
                            double margin = 0.3);

// Order-of-magnitude energy of a wave-packet of width a (erg). Pointlike when
// R is absent: hbar^2/(M a^2) - G M^2/a. Extended (homogeneous sphere of
// radius R): hbar^2/(M a^2) - G M^2/R + G M^2 a^2/R^3. Coefficients are taken
// as written; exact prefactors come from the solvers.
double energy_estimate(const PhysicalParams& params, double a,
                       std::optional<double> R = std::nullopt);

// Critical radius where the natural width equals the object size, for a
// homogeneous body of density rho: both this work's width relation and the
// Ref.-1 comparison relation reduce to a0(M(R)) = R and share the closed form
// R_c = [hbar^2 / (G (4 pi/3)^3 rho^3)]^{1/10}.
struct CriticalSize {
    double r_c;       // cm, from the a0^{1/4} R^{3/4} relation
    double r_c_ref1;  // cm, from the a0^{1/3} R^{2/3} relation
};
CriticalSize critical_size(double rho, double hbar = cgs::hbar,
                           double G = cgs::G);

}  // namespace snw
