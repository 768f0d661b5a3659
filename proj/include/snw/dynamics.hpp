#pragma once

#include <optional>
#include <vector>

#include "snw/field.hpp"
#include "snw/kernel.hpp"
#include "snw/observables.hpp"

namespace snw {

struct PropagatorConfig {
    double dt = 0.01;
    int steps = 1000;
    Kernel kernel;
    int monitor_stride = 1;    // record observables every this many steps
    int snapshot_stride = 0;   // keep field snapshots (0 = none)
    bool track_lobes = false;  // half-space masses/centroids for two-soliton runs
    Vec3 lobe_axis = {1, 0, 0};
    double boundary_warn = 1e-8;
};

struct LobeRecord {
    double mass[2];
    Vec3 centroid[2];
};

struct TrajectorySample {
    double t;
    double norm2;
    double kinetic, interaction, total;
    Vec3 momentum;
    Vec3 centroid;
    double width;
    std::optional<LobeRecord> lobes;
};

struct Snapshot {
    double t;
    ComplexField psi;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<Snapshot> snapshots;
    bool boundary_warning = false;
};

// Second-order Strang splitting for i dpsi/dt = -1/2 lap psi + V_eff psi:
// half kinetic step (multiplier e^{-i k^2 dt/4}), full potential phase kick
// with V_eff recomputed from the entering |psi|^2 (the kick leaves |psi|^2,
// hence V_eff, invariant, so the substep is exact), half kinetic step.
// Evolves psi in place; throws on NaN.
Trajectory evolve(ComplexField& psi, const PropagatorConfig& cfg);

// Galilean boost at t = 0: psi(x - r) e^{i v.x}. Momentum expectation shifts
// by exactly v when v lies on the momentum lattice (2 pi / extent per axis);
// off-lattice v and off-lattice r are allowed with a stderr note (spectral
// translation, aliasing caveat).
ComplexField boost(const ComplexField& psi, const Vec3& r, const Vec3& v);

bool is_lattice_velocity(const UniformGrid& grid, const Vec3& v, double tol = 1e-9);
Vec3 nearest_lattice_velocity(const UniformGrid& grid, const Vec3& v);

// N [phi0(x - d/2) + phi0(x + d/2)], total norm^2 = 1. d must be an even
// lattice vector and at least 6 soliton widths long; each half-space lobe then
// carries norm^2 = 1/2 to ~1e-4.
ComplexField two_soliton_prepare(const ComplexField& phi0, const Vec3& d);

// Relative acceleration of the two lobes from a tracked trajectory, by second
// central differences of the lobe separation, against the point-mass two-body
// prediction 1/d^2 (two masses 1/2, G = 1). Analysis stops where the lobes
// have merged (separation < 2 initial widths).
struct LobeAnalysis {
    std::vector<double> t;           // interior sample times
    std::vector<double> separation;
    std::vector<double> a_measured;  // -(d'')
    std::vector<double> a_predicted; // 1/d^2
    double mean_measured = 0.0;
    double mean_predicted = 0.0;
    bool merged = false;
};
LobeAnalysis lobe_acceleration(const Trajectory& traj, double initial_width);

// Gravitational cross energy between two normalized factors placed a vector d
// apart, and each factor's own interaction energy:
//   cross = -mA mB int int rhoA(x) rhoB(x' - d) / |x - x'|
//   self  = mX^2 W[psiX]
// The factors must share one grid; d must be a lattice vector reachable within
// the padded offset box.
struct CrossCoupling {
    double cross_energy;
    double self_energy_a;
    double self_energy_b;
};
CrossCoupling cross_coupling(const ComplexField& psi_a, const ComplexField& psi_b,
                             double m_a, double m_b, const Vec3& d);

}  // namespace snw
