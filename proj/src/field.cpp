#include "snw/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "snw/errors.hpp"
#include "snw/fft.hpp"

namespace snw {

ComplexField gaussian_packet(const UniformGrid& grid, double sigma, const Vec3& center) {
    if (!(sigma > 0)) throw validation_error("gaussian sigma must be > 0");
    ComplexField psi(grid);
    const double amp = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.75);
    const double inv4s2 = 1.0 / (4.0 * sigma * sigma);
    for (int ix = 0; ix < grid.n; ++ix) {
        const double dx = grid.coord(ix) - center[0];
        for (int iy = 0; iy < grid.n; ++iy) {
            const double dy = grid.coord(iy) - center[1];
            for (int iz = 0; iz < grid.n; ++iz) {
                const double dz = grid.coord(iz) - center[2];
                const double r2 = dx * dx + dy * dy + dz * dz;
                psi.at(ix, iy, iz) = amp * std::exp(-r2 * inv4s2);
            }
        }
    }
    return psi;
}

RealField density(const ComplexField& psi) {
    RealField rho(psi.grid);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        rho.values[i] = std::norm(psi.values[i]);
    return rho;
}

double norm_squared(const ComplexField& psi) {
    double s = 0.0;
    for (const auto& v : psi.values) s += std::norm(v);
    return s * psi.grid.cell_volume();
}

double integral(const RealField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.cell_volume();
}

void normalize_in_place(ComplexField& psi, double target) {
    if (!(target > 0)) throw validation_error("norm target must be > 0");
    const double n2 = norm_squared(psi);
    if (!(n2 > 0)) throw validation_error("cannot normalize a zero field");
    const double c = std::sqrt(target / n2);
    for (auto& v : psi.values) v *= c;
}

ComplexField normalize(const ComplexField& psi, double target) {
    ComplexField out = psi;
    normalize_in_place(out, target);
    return out;
}

void apply_plane_phase(ComplexField& psi, const Vec3& v) {
    const UniformGrid& g = psi.grid;
    for (int ix = 0; ix < g.n; ++ix) {
        const double px = v[0] * g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double pxy = px + v[1] * g.coord(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const double phase = pxy + v[2] * g.coord(iz);
                psi.at(ix, iy, iz) *= std::complex<double>(std::cos(phase), std::sin(phase));
            }
        }
    }
}

ComplexField shift_lattice(const ComplexField& psi, const std::array<int, 3>& cells) {
    const UniformGrid& g = psi.grid;
    ComplexField out(g);
    auto wrap = [&](int i, int s) { return ((i - s) % g.n + g.n) % g.n; };
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz)
                out.at(ix, iy, iz) =
                    psi.at(wrap(ix, cells[0]), wrap(iy, cells[1]), wrap(iz, cells[2]));
    return out;
}

ComplexField shift_spectral(const ComplexField& psi, const Vec3& r) {
    const UniformGrid& g = psi.grid;
    ComplexField out = psi;
    Fft3d fft(g.n);
    fft.forward(out.values.data());
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = g.freq(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = g.freq(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const double phase = -(kx * r[0] + ky * r[1] + g.freq(iz) * r[2]);
                out.at(ix, iy, iz) *= std::complex<double>(std::cos(phase), std::sin(phase));
            }
        }
    }
    fft.inverse(out.values.data());
    return out;
}

double boundary_amplitude_ratio(const ComplexField& psi) {
    const UniformGrid& g = psi.grid;
    double peak = 0.0;
    for (const auto& v : psi.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double edge = 0.0;
    auto visit = [&](int ix, int iy, int iz) {
        edge = std::max(edge, std::abs(psi.at(ix, iy, iz)));
    };
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            visit(0, a, b);
            visit(g.n - 1, a, b);
            visit(a, 0, b);
            visit(a, g.n - 1, b);
            visit(a, b, 0);
            visit(a, b, g.n - 1);
        }
    return edge / peak;
}

ComplexField resample_spectral(const ComplexField& psi, int n_new) {
    const int n = psi.grid.n;
    UniformGrid fine(n_new, psi.grid.extent() / n_new);
    if (n_new == n) return psi;

    ComplexField spec = psi;
    Fft3d fft_old(n);
    fft_old.forward(spec.values.data());

    // Per-axis map old bin -> (new bin, weight). The old Nyquist bin splits
    // across +-n/2 when upsampling so real fields stay real.
    struct Target { int idx; double w; };
    std::vector<std::vector<Target>> map(n);
    for (int i = 0; i < n; ++i) {
        const int f = (i <= n / 2 - 1) ? i : i - n;
        auto to_index = [&](int freq) { return (freq + n_new) % n_new; };
        if (n_new > n && i == n / 2) {
            map[i] = {{to_index(-n / 2), 0.5}, {to_index(n / 2), 0.5}};
        } else if (std::abs(f) <= n_new / 2 - 1 || (f == -n_new / 2)) {
            map[i] = {{to_index(f), 1.0}};
        }  // else: truncated on downsampling
    }

    ComplexField out(fine);
    const double scale = std::pow(double(n_new) / n, 3);
    for (int ix = 0; ix < n; ++ix)
        for (const auto& tx : map[ix])
            for (int iy = 0; iy < n; ++iy)
                for (const auto& ty : map[iy])
                    for (int iz = 0; iz < n; ++iz)
                        for (const auto& tz : map[iz])
                            out.at(tx.idx, ty.idx, tz.idx) +=
                                spec.at(ix, iy, iz) * (tx.w * ty.w * tz.w * scale);

    Fft3d fft_new(n_new);
    fft_new.inverse(out.values.data());
    return out;
}

}  // namespace snw
