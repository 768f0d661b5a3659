#include "snw/observables.hpp"

#include <cmath>

#include "snw/errors.hpp"
#include "snw/fft.hpp"

namespace snw {

Vec3 momentum_expectation(const ComplexField& psi) {
    const UniformGrid& g = psi.grid;
    ComplexField spec = psi;
    Fft3d fft(g.n);
    fft.forward(spec.values.data());
    double px = 0, py = 0, pz = 0,total = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = g.freq(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = g.freq(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const double w = std::norm(spec.at(ix, iy, iz));
                px += kx * w;
                py += ky * w;
                pz += g.freq(iz) * w;
                total += w;
            }
        }
    }
    if (!(total > 0)) throw validation_error("momentum of a zero field");
    return {px / total, py / total, pz / total};
}

Vec3 centroid(const ComplexField& psi) {
    const UniformGrid& g = psi.grid;
    double cx = 0, cy = 0, cz = 0, mass = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = g.coord(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const double w = std::norm(psi.at(ix, iy, iz));
                cx += x * w;
                cy += y * w;
                cz += g.coord(iz) * w;
                mass += w;
            }
        }
    }
    if (!(mass > 0)) throw validation_error("centroid of a zero field");
    return {cx / mass, cy / mass, cz / mass};
}

double rms_width(const ComplexField& psi) {
    const UniformGrid& g = psi.grid;
    const Vec3 c = centroid(psi);
    double s = 0, mass = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double dx = g.coord(ix) - c[0];
        for (int iy = 0; iy < g.n; ++iy) {
            const double dy = g.coord(iy) - c[1];
            for (int iz = 0; iz < g.n; ++iz) {
                const double dz = g.coord(iz) - c[2];
                const double w = std::norm(psi.at(ix, iy, iz));
                s += (dx * dx + dy * dy + dz * dz) * w;
                mass += w;
            }
        }
    }
    return std::sqrt(s / mass);
}

double kinetic_energy(const ComplexField& psi) {
    const UniformGrid& g = psi.grid;
    ComplexField spec = psi;
    Fft3d fft(g.n);
    fft.forward(spec.values.data());
    double t = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx2 = g.freq(ix) * g.freq(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky2 = g.freq(iy) * g.freq(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = g.freq(iz);
                t += (kx2 + ky2 + kz * kz) * std::norm(spec.at(ix, iy, iz));
            }
        }
    }
    // Parseval: sum |psi|^2 h^3 = sum |psi_hat|^2 h^3 / n^3
    return 0.5 * t * g.cell_volume() / g.size();
}

EnergyBreakdown energy_breakdown(const ComplexField& psi, PotentialSolver& solver) {
    if (!(psi.grid == solver.grid()))
        throw validation_error("energy_breakdown: grid mismatch");
    EnergyBreakdown e;
    e.kinetic = kinetic_energy(psi);
    if (solver.kernel().is_none()) return e;
    RealField rho = density(psi);
    RealField v = solver.solve(rho);
    double w = 0;
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        w += v.values[i] * rho.values[i];
    e.interaction = 0.5 * w * psi.grid.cell_volume();
    return e;
}

EnergyBreakdown energy_breakdown(const ComplexField& psi, const Kernel& kernel) {
    PotentialSolver solver(psi.grid, kernel);
    return energy_breakdown(psi, solver);
}

double eigenvalue(const ComplexField& psi, PotentialSolver& solver) {
    EnergyBreakdown e = energy_breakdown(psi, solver);
    return e.kinetic + 2.0 * e.interaction;
}

double eigenvalue(const ComplexField& psi, const Kernel& kernel) {
    PotentialSolver solver(psi.grid, kernel);
    return eigenvalue(psi, solver);
}

}  // namespace snw
