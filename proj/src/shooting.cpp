#include "snw/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "snw/errors.hpp"

namespace snw {

namespace {

double trapz(const std::vector<double>& f, double dr) {
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dr;
}

// Numerov update for u'' = f u:
// u_{k+1} (1 - h^2 f_{k+1}/12) = 2 u_k (1 + 5 h^2 f_k/12) - u_{k-1} (1 - h^2 f_{k-1}/12)
struct RadialSolver {
    int n;
    double dr;
    std::vector<double> r, V;

    int count_nodes(double eps) const {
        const double h2 = dr * dr;
        auto f = [&](int k) { return 2.0 * (V[k] - eps); };
        double um = 0.0, uk = dr;
        int nodes = 0;
        for (int k = 1; k < n; ++k) {
            const double up = (2.0 * (1.0 + 5.0 * h2 / 12.0 * f(k)) * uk -
                               (1.0 - h2 / 12.0 * f(k - 1)) * um) /
                              (1.0 - h2 / 12.0 * f(k + 1));
            if ((up < 0 && uk > 0) || (up > 0 && uk < 0)) ++nodes;
            um = uk;
            uk = up;
            if (std::abs(uk) > 1e250) { um *= 1e-200; uk *= 1e-200; }
        }
        return nodes;
    }

    // Log-derivative mismatch at the outer turning point between the outward
    // solution (regular at 0) and the inward solution (decaying at rmax);
    // fills `u` with the assembled candidate.
    double mismatch(double eps, std::vector<double>& u) const {
        const double h2 = dr * dr;
        auto f = [&](int k) { return 2.0 * (V[k] - eps); };
        int km = n / 2;
        for (int k = n - 1; k >= 1; --k)
            if (V[k] - eps < 0) { km = k; break; }
        km = std::clamp(km, 8, n - 8);

        std::vector<double> out(km + 2), in(n + 1);
        out[0] = 0.0;
        out[1] = dr;
        for (int k = 1; k <= km; ++k)
            out[k + 1] = (2.0 * (1.0 + 5.0 * h2 / 12.0 * f(k)) * out[k] -
                          (1.0 - h2 / 12.0 * f(k - 1)) * out[k - 1]) /
                         (1.0 - h2 / 12.0 * f(k + 1));
        const double kappa = std::sqrt(std::max(-2.0 * eps, 1e-12));
        in[n] = std::exp(-kappa * r[n]);
        in[n - 1] = std::exp(-kappa * r[n - 1]);
        for (int k = n - 1; k > km - 2; --k)
            in[k - 1] = (2.0 * (1.0 + 5.0 * h2 / 12.0 * f(k)) * in[k] -
                         (1.0 - h2 / 12.0 * f(k + 1)) * in[k + 1]) /
                        (1.0 - h2 / 12.0 * f(k - 1));

        const double dout = (out[km + 1] - out[km - 1]) / (2 * dr);
        const double din = (in[km + 1] - in[km - 1]) / (2 * dr);
        const double mis = dout / out[km] - din / in[km];

        u.assign(n + 1, 0.0);
        const double scale = out[km] / in[km];
        for (int k = 0; k <= km; ++k) u[k] = out[k];
        for (int k = km + 1; k <= n; ++k) u[k] = in[k] * scale;
        return mis;
    }

    // Ground eigenvalue of the current V: bisect the 0 -> 1 node transition
    // of the outward solution.
    double solve_ground(std::vector<double>& u) const {
        double lo = *std::min_element(V.begin(), V.end());
        double hi = -1e-10;
        if (count_nodes(lo) != 0)
            throw convergence_error("shooting: nodes at the potential floor (eps=" +
                                    std::to_string(lo) + ")");
        if (count_nodes(hi) < 1)
            throw convergence_error(
                "shooting: no bound ground state inside the bracket [" +
                std::to_string(lo) + ", 0); enlarge rmax");
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (count_nodes(mid) >= 1) hi = mid; else lo = mid;
        }
        // The transition point is the Dirichlet eigenvalue on [0, rmax],
        // exponentially close to the true one for decayed states. Assemble the
        // blowup-free eigenfunction by outward/inward matching at that eps.
        const double eps = 0.5 * (lo + hi);
        mismatch(eps, u);
        return eps;
    }
};

}  // namespace

ShootingResult radial_shooting_oracle(const ShootingOptions& opt) {
    if (!(opt.rmax > 0) || opt.npoints < 100)
        throw validation_error("shooting: need rmax > 0 and npoints >= 100");

    RadialSolver s;
    s.n = opt.npoints;
    s.dr = opt.rmax / opt.npoints;
    s.r.resize(s.n + 1);
    s.V.assign(s.n + 1, 0.0);
    for (int k = 0; k <= s.n; ++k) s.r[k] = k * s.dr;

    // start from a Gaussian near the variational width
    std::vector<double> u(s.n + 1);
    const double sig = 2.7;
    for (int k = 0; k <= s.n; ++k)
        u[k] = s.r[k] * std::exp(-s.r[k] * s.r[k] / (4.0 * sig * sig));
    auto renorm = [&](std::vector<double>& w) {
        std::vector<double> w2(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) w2[i] = w[i] * w[i];
        const double nn = trapz(w2, s.dr);
        for (auto& x : w) x /= std::sqrt(nn);
    };
    renorm(u);

    auto update_potential = [&](const std::vector<double>& w) {
        RadialProfile rho;
        rho.r.assign(s.r.begin() + 1, s.r.end());  // radial_potential wants r > 0
        rho.values.resize(s.n);
        for (int k = 1; k <= s.n; ++k)
            rho.values[k - 1] = w[k] * w[k] / (4.0 * M_PI * s.r[k] * s.r[k]);
        RadialProfile V = radial_potential(rho);
        for (int k = 1; k <= s.n; ++k) s.V[k] = V.values[k - 1];
        // V(0): no enclosed mass, only the outer-shell integral
        std::vector<double> shell(s.n + 1, 0.0);
        for (int k = 1; k <= s.n; ++k) shell[k] = w[k] * w[k] / s.r[k];
        s.V[0] = -trapz(shell, s.dr);
    };

    double eps = 0.0, eps_prev = 1.0;
    int scf = 0;
    for (; scf < opt.max_scf; ++scf) {
        const std::vector<double> u_prev = u;
        update_potential(u);
        eps = s.solve_ground(u);
        renorm(u);
        for (int k = 0; k <= s.n; ++k) {
            const double d = (1.0 - opt.mix) * u_prev[k] * u_prev[k] + opt.mix * u[k] * u[k];
            u[k] = (u[k] < 0 ? -1.0 : 1.0) * std::sqrt(std::max(d, 0.0));
        }
        renorm(u);
        if (std::abs(eps - eps_prev) < opt.scf_tol * std::abs(eps)) break;
        eps_prev = eps;
    }
    if (scf == opt.max_scf)
        throw convergence_error("shooting: self-consistency stalled at eps=" +
                                std::to_string(eps));

    update_potential(u);
    eps = s.solve_ground(u);
    renorm(u);
    update_potential(u);

    // decay sanity: the stated rmax must actually contain the state
    if (std::abs(u[s.n - 1]) > 1e-6)
        throw validation_error("shooting: u has not decayed at rmax; enlarge rmax");

    ShootingResult res;
    res.epsilon = eps;
    res.scf_iterations = scf + 1;

    std::vector<double> du(s.n + 1), tmp(s.n + 1);
    for (int k = 2; k <= s.n - 2; ++k)
        du[k] = (-u[k + 2] + 8 * u[k + 1] - 8 * u[k - 1] + u[k - 2]) / (12 * s.dr);
    du[0] = u[1] / s.dr;
    du[1] = (u[2] - u[0]) / (2 * s.dr);
    du[s.n - 1] = (u[s.n] - u[s.n - 2]) / (2 * s.dr);
    du[s.n] = (u[s.n] - u[s.n - 1]) / s.dr;
    for (int k = 0; k <= s.n; ++k) tmp[k] = du[k] * du[k];
    res.energy.kinetic = 0.5 * trapz(tmp, s.dr);
    for (int k = 0; k <= s.n; ++k) tmp[k] = s.V[k] * u[k] * u[k];
    res.energy.interaction = 0.5 * trapz(tmp, s.dr);
    for (int k = 0; k <= s.n; ++k) tmp[k] = s.r[k] * s.r[k] * u[k] * u[k];
    res.width = std::sqrt(trapz(tmp, s.dr));
    for (int k = 1; k < s.n; ++k)
        if (u[k] * u[k + 1] < 0 && std::abs(u[k]) > 1e-12) ++res.nodes;
    res.u.r = s.r;
    res.u.values = u;
    return res;
}

}  // namespace snw
