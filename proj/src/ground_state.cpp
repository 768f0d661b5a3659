#include "snw/ground_state.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "snw/errors.hpp"
#include "snw/fft.hpp"
#include "snw/potential.hpp"

namespace snw {

double gaussian_trial_energy(const Kernel& kernel, double sigma) {
    if (!(sigma > 0)) throw validation_error("sigma must be > 0");
    const double T = 3.0 / (8.0 * sigma * sigma);
    switch (kernel.variant) {
        case Kernel::Variant::newtonian:
            return T - kernel.strength / (2.0 * std::sqrt(std::numbers::pi) * sigma);
        case Kernel::Variant::harmonic_sphere: {
            const double R = kernel.radius;
            return T + kernel.strength * (-3.0 / (5.0 * R) +
                                          3.0 * sigma * sigma / (2.0 * R * R * R));
        }
        default:
            throw validation_error("gaussian trial energy needs a newtonian or harmonic kernel");
    }
}

VariationalOptimum gaussian_variational(const Kernel& kernel) {
    if (kernel.is_none())
        throw no_ground_state_error("no variational minimum without self-interaction");
    const double g = kernel.strength;
    switch (kernel.variant) {
        case Kernel::Variant::newtonian: {
            // E(s) = 3/(8 s^2) - g/(2 sqrt(pi) s): s* = 2A/B, E* = -B^2/(4A)
            const double s = 3.0 * std::sqrt(std::numbers::pi) / (2.0 * g);
            return {s, -g * g / (6.0 * std::numbers::pi)};
        }
        case Kernel::Variant::harmonic_sphere: {
            const double R = kernel.radius;
            const double s = std::pow(R * R * R / (4.0 * g), 0.25);
            return {s, gaussian_trial_energy(kernel, s)};
        }
        default:
            throw validation_error("gaussian_variational needs a newtonian or harmonic kernel");
    }
}

namespace {

struct Monitor {
    double energy;
    double epsilon;
    double residual;
};

// One energy/residual evaluation: a spectral pass for T and H psi, one
// potential solve for W.
Monitor evaluate(const ComplexField& psi, const Fft3d& fft, PotentialSolver& solver,
                 const std::vector<double>& k2) {
    const UniformGrid& g = psi.grid;
    const std::size_t total = g.size();
    const double h3 = g.cell_volume();

    ComplexField spec = psi;
    fft.forward(spec.values.data());
    double t = 0;
    for (std::size_t i = 0; i < total; ++i) t += k2[i] * std::norm(spec.values[i]);
    const double T = 0.5 * t * h3 / double(total);

    ComplexField hpsi = spec;
    for (std::size_t i = 0; i < total; ++i) hpsi.values[i] *= 0.5 * k2[i];
    fft.inverse(hpsi.values.data());

    RealField rho = density(psi);
    RealField v = solver.solve(rho);
    double w = 0;
    for (std::size_t i = 0; i < total; ++i) w += v.values[i] * rho.values[i];
    const double W = 0.5 * w * h3;
    const double eps = T + 2.0 * W;

    double r2 = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const std::complex<double> r =
            hpsi.values[i] + (v.values[i] - eps) * psi.values[i];
        r2 += std::norm(r);
    }
    return {T + W, eps, std::sqrt(r2 * h3)};
}

}  // namespace

GroundStateResult minimize(const UniformGrid& grid, const Kernel& kernel,
                           const ComplexField& init, const DescentSchedule& schedule) {
    if (kernel.is_none())
        throw no_ground_state_error(
            "the free equation has no normalized energy minimizer (packets spread "
            "without bound); choose an attractive kernel");
    if (!(init.grid == grid)) throw validation_error("minimize: init grid mismatch");
    if (!(norm_squared(init) > 0)) throw validation_error("minimize: init has zero norm");

    const int n = grid.n;
    const std::size_t total = grid.size();

    ComplexField psi = normalize(init);
    Fft3d fft(n);
    PotentialSolver solver(grid, kernel);

    std::vector<double> k2(total);
    for (int ix = 0; ix < n; ++ix) {
        const double kx2 = grid.freq(ix) * grid.freq(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky2 = grid.freq(iy) * grid.freq(iy);
            for (int iz = 0; iz < n; ++iz) {
                const double kz = grid.freq(iz);
                k2[grid.index(ix, iy, iz)] = kx2 + ky2 + kz * kz;
            }
        }
    }

    double dtau = schedule.dtau;
    if (!(dtau > 0)) throw validation_error("dtau must be > 0");
    std::vector<double> half_kick(total);
    auto rebuild_kick = [&] {
        for (std::size_t i = 0; i < total; ++i)
            half_kick[i] = std::exp(-0.25 * k2[i] * dtau);
    };
    rebuild_kick();

    auto step = [&](ComplexField& f) {
        fft.forward(f.values.data());
        for (std::size_t i = 0; i < total; ++i) f.values[i] *= half_kick[i];
        fft.inverse(f.values.data());
        RealField rho = density(f);
        RealField v = solver.solve(rho);
        for (std::size_t i = 0; i < total; ++i)
            f.values[i] *= std::exp(-v.values[i] * dtau);
        fft.forward(f.values.data());
        for (std::size_t i = 0; i < total; ++i) f.values[i] *= half_kick[i];
        fft.inverse(f.values.data());
        normalize_in_place(f);
    };

    Monitor mon = evaluate(psi, fft, solver, k2);
    double best_energy = mon.energy;
    double prev_residual = mon.residual;
    ComplexField checkpoint = psi;
    const double dtau_floor = 1e-3;
    bool converged = mon.residual < schedule.tol;
    int iter = 0;

    // Phase 1: imaginary-time split stepping. Its fixed point carries an
    // O(dtau^2) residual bias, so run it until the residual stalls, then hand
    // over to the bias-free polish below.
    while (!converged && iter < schedule.max_iter) {
        const int burst = std::min(schedule.check_every, schedule.max_iter - iter);
        for (int i = 0; i < burst; ++i) step(psi);
        iter += burst;

        mon = evaluate(psi, fft, solver, k2);
        if (!std::isfinite(mon.energy) || !std::isfinite(mon.residual))
            throw convergence_error("minimize: non-finite energy during descent");

        if (mon.energy > best_energy + 1e-13 * std::abs(best_energy)) {
            // overshoot: discard the burst and retry smaller
            psi = checkpoint;
            dtau *= 0.5;
            if (dtau < dtau_floor) break;  // polish takes it from here
            rebuild_kick();
            continue;
        }
        best_energy = mon.energy;
        checkpoint = psi;
        if (mon.residual < schedule.tol) {
            converged = true;
            break;
        }
        if (mon.residual > 0.85 * prev_residual) break;  // stalled near the biased fixed point
        prev_residual = mon.residual;
        if (!schedule.quiet && iter % (schedule.check_every * 10) == 0)
            std::fprintf(stderr, "  minimize iter %6d  E=%.10f  residual=%.3e  dtau=%.4f\n",
                         iter, mon.energy, mon.residual, dtau);
    }

    // Phase 2: preconditioned residual descent on the same constrained
    // functional: psi <- normalize(psi - alpha (K + |eps|)^{-1} (H psi - eps psi)).
    // Monotone in energy with the same halving rule, and its fixed point is the
    // exact discrete stationary state, so the tolerance is reachable.
    if (!converged) {
        double alpha = 1.0;
        ComplexField vpsi(grid), res_vec(grid);
        best_energy = mon.energy;
        checkpoint = psi;
        while (!converged && iter < schedule.max_iter) {
            RealField rho = density(psi);
            RealField v = solver.solve(rho);
            double t = 0, w = 0;
            ComplexField spec = psi;
            fft.forward(spec.values.data());
            for (std::size_t i = 0; i < total; ++i) t += k2[i] * std::norm(spec.values[i]);
            const double T = 0.5 * t * grid.cell_volume() / double(total);
            for (std::size_t i = 0; i < total; ++i) w += v.values[i] * rho.values[i];
            const double W = 0.5 * w * grid.cell_volume();
            const double eps = T + 2.0 * W;

            // residual in spectral form: k^2/2 psi_hat + FFT(V psi) - eps psi_hat
            for (std::size_t i = 0; i < total; ++i)
                vpsi.values[i] = v.values[i] * psi.values[i];
            fft.forward(vpsi.values.data());
            double r2 = 0;
            const double shift = std::max(std::abs(eps), 0.05);
            for (std::size_t i = 0; i < total; ++i) {
                const std::complex<double> r =
                    (0.5 * k2[i] - eps) * spec.values[i] + vpsi.values[i];
                r2 += std::norm(r);
                res_vec.values[i] = r / (0.5 * k2[i] + shift);
            }
            mon.energy = T + W;
            mon.epsilon = eps;
            mon.residual = std::sqrt(r2 * grid.cell_volume() / double(total));
            if (!std::isfinite(mon.residual))
                throw convergence_error("minimize: non-finite residual in polish");
            if (mon.residual < schedule.tol) {
                converged = true;
                break;
            }
            if (mon.energy > best_energy + 1e-13 * std::abs(best_energy)) {
                psi = checkpoint;
                alpha *= 0.5;
                if (alpha < 1e-4)
                    throw convergence_error("minimize: polish step collapsed at residual " +
                                            std::to_string(mon.residual));
                continue;
            }
            best_energy = mon.energy;
            checkpoint = psi;

            fft.inverse(res_vec.values.data());
            for (std::size_t i = 0; i < total; ++i)
                psi.values[i] -= alpha * res_vec.values[i];
            normalize_in_place(psi);
            ++iter;
            if (!schedule.quiet && iter % 25 == 0)
                std::fprintf(stderr, "  polish   iter %6d  E=%.10f  residual=%.3e  alpha=%.3f\n",
                             iter, mon.energy, mon.residual, alpha);
        }
    }

    if (!converged)
        throw convergence_error("minimize: no convergence after " +
                                std::to_string(iter) + " iterations (residual " +
                                std::to_string(mon.residual) + ")");

    // fix the global phase so the peak is real positive
    std::size_t peak = 0;
    double peak_mag = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const double m = std::abs(psi.values[i]);
        if (m > peak_mag) { peak_mag = m; peak = i; }
    }
    const double theta = std::arg(psi.values[peak]);
    const std::complex<double> rot(std::cos(-theta), std::sin(-theta));
    for (auto& v : psi.values) v *= rot;

    // recenter the translation-degenerate result onto the lattice
    const Vec3 c = centroid(psi);
    const std::array<int, 3> cells = {int(std::lround(c[0] / grid.h)),
                                      int(std::lround(c[1] / grid.h)),
                                      int(std::lround(c[2] / grid.h))};
    if (cells[0] || cells[1] || cells[2]) psi = shift_lattice(psi, cells);

    GroundStateResult res;
    res.energy = energy_breakdown(psi, solver);
    res.epsilon = res.energy.kinetic + 2.0 * res.energy.interaction;
    res.width = rms_width(psi);
    res.iterations = iter;
    res.residual = mon.residual;
    res.boundary_ratio = boundary_amplitude_ratio(psi);
    res.phi0 = std::move(psi);
    return res;
}

GroundStateResult minimize(const UniformGrid& grid, const Kernel& kernel,
                           const DescentSchedule& schedule) {
    if (kernel.is_none())
        throw no_ground_state_error(
            "the free equation has no normalized energy minimizer (packets spread "
            "without bound); choose an attractive kernel");
    // Gaussian preset at the variational optimum (sphere kernel: use the
    // newtonian optimum, same far field).
    Kernel vk = kernel;
    if (kernel.variant == Kernel::Variant::sphere) vk = Kernel::newtonian(kernel.strength);
    const double sigma = gaussian_variational(vk).sigma_star;

    if (schedule.coarse_start && grid.n >= 128 && sigma >= 2.2 * (2.0 * grid.h)) {
        // solve on the half grid first, then refine spectrally
        UniformGrid coarse(grid.n / 2, grid.h * 2.0);
        DescentSchedule cs = schedule;
        cs.tol = std::max(schedule.tol, 2e-6);
        GroundStateResult cr = minimize(coarse, kernel, cs);
        ComplexField warm = resample_spectral(cr.phi0, grid.n);
        DescentSchedule fs = schedule;
        fs.coarse_start = false;
        GroundStateResult res = minimize(grid, kernel, warm, fs);
        res.iterations += cr.iterations;
        return res;
    }
    return minimize(grid, kernel, gaussian_packet(grid, sigma), schedule);
}

}  // namespace snw
