#include "snw/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "snw/errors.hpp"
#include "snw/fft.hpp"
#include "snw/potential.hpp"

namespace snw {

namespace {

Vec3 unit(const Vec3& v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(n > 0)) throw validation_error("zero direction vector");
    return {v[0] / n, v[1] / n, v[2] / n};
}

double length(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

// One observables record; shares a single spectral pass between T and <p>.
TrajectorySample observe(const ComplexField& psi, const Fft3d& fft,
                         PotentialSolver& solver, const std::vector<double>& k2v,
                         const PropagatorConfig& cfg, double t) {
    const UniformGrid& g = psi.grid;
    const std::size_t total = g.size();
    const double h3 = g.cell_volume();

    TrajectorySample s{};
    s.t = t;

    ComplexField spec = psi;
    fft.forward(spec.values.data());
    double ksum = 0, wsum = 0;
    double px = 0, py = 0, pz = 0;
    std::size_t i = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = g.freq(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = g.freq(iy);
            for (int iz = 0; iz < g.n; ++iz, ++i) {
                const double kz = g.freq(iz);
                const double w = std::norm(spec.values[i]);
                ksum += k2v[i] * w;
                px += kx * w;
                py += ky * w;
                pz += kz * w;
                wsum += w;
            }
        }
    }
    s.kinetic = 0.5 * ksum * h3 / double(total);
    s.momentum = {px / wsum, py / wsum, pz / wsum};

    RealField rho = density(psi);
    if (!solver.kernel().is_none()) {
        RealField v = solver.solve(rho);
        double w = 0;
        for (std::size_t j = 0; j < total; ++j) w += v.values[j] * rho.values[j];
        s.interaction = 0.5 * w * h3;
    }
    s.total = s.kinetic + s.interaction;

    double mass = 0, cx = 0, cy = 0, cz = 0;
    i = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = g.coord(iy);
            for (int iz = 0; iz < g.n; ++iz, ++i) {
                const double w = rho.values[i];
                mass += w;
                cx += x * w;
                cy += y * w;
                cz += g.coord(iz) * w;
            }
        }
    }
    s.norm2 = mass * h3;
    if (!(mass > 0) || !std::isfinite(mass))
        throw convergence_error("evolve: field norm lost (NaN or zero)");
    const Vec3 c = {cx / mass, cy / mass, cz / mass};
    s.centroid = c;

    double r2 = 0;
    i = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double dx = g.coord(ix) - c[0];
        for (int iy = 0; iy < g.n; ++iy) {
            const double dy = g.coord(iy) - c[1];
            for (int iz = 0; iz < g.n; ++iz, ++i) {
                const double dz = g.coord(iz) - c[2];
                r2 += (dx * dx + dy * dy + dz * dz) * rho.values[i];
            }
        }
    }
    s.width = std::sqrt(r2 / mass);

    if (cfg.track_lobes) {
        const Vec3 a = unit(cfg.lobe_axis);
        LobeRecord lr{};
        double m[2] = {0, 0}, lx[2] = {0, 0}, ly[2] = {0, 0}, lz[2] = {0, 0};
        i = 0;
        for (int ix = 0; ix < g.n; ++ix) {
            const double x = g.coord(ix);
            for (int iy = 0; iy < g.n; ++iy) {
                const double y = g.coord(iy);
                for (int iz = 0; iz < g.n; ++iz, ++i) {
                    const double z = g.coord(iz);
                    const double dot = (x - c[0]) * a[0] + (y - c[1]) * a[1] + (z - c[2]) * a[2];
                    const int side = dot < 0 ? 0 : 1;
                    const double w = rho.values[i];
                    m[side] += w;
                    lx[side] += x * w;
                    ly[side] += y * w;
                    lz[side] += z * w;
                }
            }
        }
        for (int k = 0; k < 2; ++k) {
            lr.mass[k] = m[k] * h3;
            if (m[k] > 0) lr.centroid[k] = {lx[k] / m[k], ly[k] / m[k], lz[k] / m[k]};
        }
        s.lobes = lr;
    }
    return s;
}

}  // namespace

Trajectory evolve(ComplexField& psi, const PropagatorConfig& cfg) {
    if (!(cfg.dt > 0)) throw validation_error("evolve: dt must be > 0");
    if (cfg.steps < 1) throw validation_error("evolve: steps must be >= 1");
    if (cfg.monitor_stride < 1) throw validation_error("evolve: monitor_stride must be >= 1");
    if (cfg.snapshot_stride < 0) throw validation_error("evolve: snapshot_stride must be >= 0");

    const UniformGrid g = psi.grid;
    const std::size_t total = g.size();
    Fft3d fft(g.n);
    PotentialSolver solver(g, cfg.kernel);

    std::vector<double> k2v(total);
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx2 = g.freq(ix) * g.freq(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky2 = g.freq(iy) * g.freq(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = g.freq(iz);
                k2v[g.index(ix, iy, iz)] = kx2 + ky2 + kz * kz;
            }
        }
    }
    // half kinetic step e^{-i k^2 dt/4}
    std::vector<std::complex<double>> half_kick(total);
    for (std::size_t i = 0; i < total; ++i) {
        const double a = -0.25 * k2v[i] * cfg.dt;
        half_kick[i] = {std::cos(a), std::sin(a)};
    }

    Trajectory traj;
    auto record = [&](double t) {
        TrajectorySample s = observe(psi, fft, solver, k2v, cfg, t);
        traj.samples.push_back(s);
        if (boundary_amplitude_ratio(psi) > cfg.boundary_warn) traj.boundary_warning = true;
    };
    record(0.0);
    if (cfg.snapshot_stride > 0) traj.snapshots.push_back({0.0, psi});

    const bool has_potential = !cfg.kernel.is_none();
    for (int step = 1; step <= cfg.steps; ++step) {
        fft.forward(psi.values.data());
        for (std::size_t i = 0; i < total; ++i) psi.values[i] *= half_kick[i];
        fft.inverse(psi.values.data());

        if (has_potential) {
            RealField rho = density(psi);
            RealField v = solver.solve(rho);
            // the kick leaves |psi|^2 (hence V_eff) unchanged: exact substep
            for (std::size_t i = 0; i < total; ++i) {
                const double a = -v.values[i] * cfg.dt;
                psi.values[i] *= std::complex<double>(std::cos(a), std::sin(a));
            }
        }

        fft.forward(psi.values.data());
        for (std::size_t i = 0; i < total; ++i) psi.values[i] *= half_kick[i];
        fft.inverse(psi.values.data());

        const double t = step * cfg.dt;
        if (step % cfg.monitor_stride == 0 || step == cfg.steps) record(t);
        if (cfg.snapshot_stride > 0 && step % cfg.snapshot_stride == 0)
            traj.snapshots.push_back({t, psi});
    }
    return traj;
}

bool is_lattice_velocity(const UniformGrid& grid, const Vec3& v, double tol) {
    for (double c : v) {
        const double bins = c * grid.extent() / (2.0 * std::numbers::pi);
        if (std::abs(bins - std::round(bins)) > tol) return false;
    }
    return true;
}

Vec3 nearest_lattice_velocity(const UniformGrid& grid, const Vec3& v) {
    const double dk = 2.0 * std::numbers::pi / grid.extent();
    return {std::round(v[0] / dk) * dk, std::round(v[1] / dk) * dk,
            std::round(v[2] / dk) * dk};
}

ComplexField boost(const ComplexField& psi, const Vec3& r, const Vec3& v) {
    const UniformGrid& g = psi.grid;
    ComplexField out = psi;

    if (r[0] != 0 || r[1] != 0 || r[2] != 0) {
        bool lattice = true;
        std::array<int, 3> cells{};
        for (int j = 0; j < 3; ++j) {
            const double c = r[j] / g.h;
            cells[j] = int(std::lround(c));
            if (std::abs(c - cells[j]) > 1e-9) lattice = false;
        }
        if (lattice) {
            out = shift_lattice(out, cells);
        } else {
            std::fprintf(stderr,
                         "snw: boost displacement is off-lattice; using spectral "
                         "interpolation\n");
            out = shift_spectral(out, r);
        }
    }
    if (v[0] != 0 || v[1] != 0 || v[2] != 0) {
        if (!is_lattice_velocity(g, v))
            std::fprintf(stderr,
                         "snw: boost velocity off the momentum lattice (multiples of "
                         "2 pi/extent); expect aliasing in covariance checks\n");
        apply_plane_phase(out, v);
    }
    return out;
}

ComplexField two_soliton_prepare(const ComplexField& phi0, const Vec3& d) {
    const UniformGrid& g = phi0.grid;
    const double width = rms_width(phi0);
    const double sep = length(d);
    if (sep < 6.0 * width)
        throw validation_error("two_soliton_prepare: separation " + std::to_string(sep) +
                               " is below 6 widths (" + std::to_string(6.0 * width) +
                               "); lobes would overlap");
    std::array<int, 3> half{};
    for (int j = 0; j < 3; ++j) {
        const double c = d[j] / (2.0 * g.h);
        half[j] = int(std::lround(c));
        if (std::abs(c - half[j]) > 1e-9)
            throw validation_error("two_soliton_prepare: d/2 must be a lattice vector");
    }

    ComplexField plus = shift_lattice(phi0, half);
    ComplexField minus = shift_lattice(phi0, {-half[0], -half[1], -half[2]});
    ComplexField psi(g);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        psi.values[i] = plus.values[i] + minus.values[i];
    normalize_in_place(psi);

    if (boundary_amplitude_ratio(psi) > 1e-4)
        throw validation_error("two_soliton_prepare: lobes are not decayed at the box scale");

    // each half-space must carry norm^2 = 1/2
    const Vec3 axis = unit(d);
    double m_neg = 0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const double dot = g.coord(ix) * axis[0] + g.coord(iy) * axis[1] +
                                   g.coord(iz) * axis[2];
                if (dot < 0) m_neg += std::norm(psi.at(ix, iy, iz));
            }
    m_neg *= g.cell_volume();
    if (std::abs(m_neg - 0.5) > 1e-4)
        throw validation_error("two_soliton_prepare: lobe mass " + std::to_string(m_neg) +
                               " deviates from 1/2 by more than 1e-4");
    return psi;
}

LobeAnalysis lobe_acceleration(const Trajectory& traj, double initial_width) {
    LobeAnalysis out;
    std::vector<double> t, sep;
    for (const auto& s : traj.samples) {
        if (!s.lobes) continue;
        const auto& l = *s.lobes;
        const double dx = l.centroid[1][0] - l.centroid[0][0];
        const double dy = l.centroid[1][1] - l.centroid[0][1];
        const double dz = l.centroid[1][2] - l.centroid[0][2];
        const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (d < 2.0 * initial_width) {
            out.merged = true;
            break;  // lobes merged; the half-space split is meaningless beyond
        }
        t.push_back(s.t);
        sep.push_back(d);
    }
    if (t.size() < 3)
        throw validation_error("lobe_acceleration: need >= 3 lobe samples before merger");
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const double dt1 = t[i] - t[i - 1], dt2 = t[i + 1] - t[i];
        if (std::abs(dt1 - dt2) > 1e-9 * dt1)
            throw validation_error("lobe_acceleration: nonuniform sampling");
        const double acc = (sep[i + 1] - 2.0 * sep[i] + sep[i - 1]) / (dt1 * dt1);
        out.t.push_back(t[i]);
        out.separation.push_back(sep[i]);
        out.a_measured.push_back(-acc);
        out.a_predicted.push_back(1.0 / (sep[i] * sep[i]));
    }
    double sm = 0, sp = 0;
    for (std::size_t i = 0; i < out.t.size(); ++i) {
        sm += out.a_measured[i];
        sp += out.a_predicted[i];
    }
    out.mean_measured = sm / out.t.size();
    out.mean_predicted = sp / out.t.size();
    return out;
}

CrossCoupling cross_coupling(const ComplexField& psi_a, const ComplexField& psi_b,
                             double m_a, double m_b, const Vec3& d) {
    const UniformGrid& g = psi_a.grid;
    if (!(psi_b.grid == g))
        throw validation_error("cross_coupling: factor grids are incompatible");
    if (m_a < 0 || m_b < 0)
        throw validation_error("cross_coupling: mass fractions must be >= 0");
    if (std::abs(norm_squared(psi_a) - 1.0) > 1e-6 ||
        std::abs(norm_squared(psi_b) - 1.0) > 1e-6)
        throw validation_error("cross_coupling: factors must be normalized to 1");

    const int n = g.n, m = 2 * n;
    std::array<int, 3> cells{};
    for (int j = 0; j < 3; ++j) {
        const double c = d[j] / g.h;
        cells[j] = int(std::lround(c));
        if (std::abs(c - cells[j]) > 1e-9)
            throw validation_error("cross_coupling: d must be a lattice vector");
        if (std::abs(cells[j]) > n)
            throw validation_error("cross_coupling: |d| exceeds the padded offset box");
    }

    const Kernel newt = Kernel::newtonian(1.0);
    CrossCoupling out{};
    out.self_energy_a = m_a * m_a * energy_breakdown(psi_a, newt).interaction;
    out.self_energy_b = m_b * m_b * energy_breakdown(psi_b, newt).interaction;
    if (m_a == 0.0 || m_b == 0.0) return out;

    RealFft3d fft(m);
    std::vector<double> kspec = hockney_kernel_spectrum(g, newt, fft);

    auto padded_spectrum = [&](const ComplexField& psi) {
        std::vector<double> pad(fft.real_size(), 0.0);
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz)
                    pad[(std::size_t(ix) * m + iy) * m + iz] = std::norm(psi.at(ix, iy, iz));
        std::vector<std::complex<double>> spec(fft.complex_size());
        fft.forward(pad.data(), spec.data());
        return spec;
    };
    std::vector<std::complex<double>> spec_a = padded_spectrum(psi_a);
    std::vector<std::complex<double>> spec_b = padded_spectrum(psi_b);

    // correlation C(d) = sum_x rhoA(x) (K * rhoB)(x - d) h^6
    //              = IDFT[ K_hat h^3 rhoA_hat conj(rhoB_hat) ](d) h^3
    for (std::size_t i = 0; i < spec_a.size(); ++i)
        spec_a[i] = kspec[i] * spec_a[i] * std::conj(spec_b[i]);
    std::vector<double> corr(fft.real_size());
    fft.inverse(spec_a.data(), corr.data());

    auto wrap = [&](int c) { return ((c % m) + m) % m; };
    const std::size_t at =
        (std::size_t(wrap(cells[0])) * m + wrap(cells[1])) * m + wrap(cells[2]);
    out.cross_energy = m_a * m_b * corr[at] * g.cell_volume();
    return out;
}

}  // namespace snw
