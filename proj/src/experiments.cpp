#include "snw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>

#include <json.hpp>

#include "snw/dynamics.hpp"
#include "snw/errors.hpp"
#include "snw/ground_state.hpp"
#include "snw/shooting.hpp"
#include "snw/snwf.hpp"

namespace snw {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunDir {
    fs::path dir;
    RunRecord rec;

    RunDir(const ScenarioConfig& cfg, const RunContext& ctx) {
        rec.config_hash = cfg.config_hash();
        rec.run_id = cfg.subcommand + "-" + rec.config_hash.substr(0, 8);
        dir = ctx.out_dir.empty() ? fs::path("runs") / rec.run_id : fs::path(ctx.out_dir);
        fs::create_directories(dir);
        write_text("config.json", cfg.canonical_json() + "\n");
    }

    void write_text(const std::string& name, const std::string& content) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw validation_error("cannot write " + (dir / name).string());
        f << content;
        rec.files.push_back(name);
    }

    void note_file(const std::string& name) { rec.files.push_back(name); }

    RunRecord finish() {
        json m(rec.metrics);
        write_text("summary.json", m.dump(2) + "\n");
        std::sort(rec.files.begin(), rec.files.end());
        write_run_record(dir.string(), rec);
        return rec;
    }
};

DescentSchedule schedule_from(const ScenarioConfig& cfg, const RunContext& ctx) {
    DescentSchedule s;
    s.dtau = cfg.solver.dtau;
    s.max_iter = cfg.solver.max_iter;
    s.tol = cfg.solver.tol;
    s.quiet = ctx.quiet;
    return s;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,norm2,T,W,E,px,py,pz,cx,cy,cz,width";
    const bool lobes = !traj.samples.empty() && traj.samples.front().lobes.has_value();
    if (lobes) out += ",lmass,lcx,lcy,lcz,rmass,rcx,rcy,rcz";
    out += "\n";
    for (const auto& s : traj.samples) {
        out += fmt(s.t) + "," + fmt(s.norm2) + "," + fmt(s.kinetic) + "," +
               fmt(s.interaction) + "," + fmt(s.total);
        for (double v : s.momentum) out += "," + fmt(v);
        for (double v : s.centroid) out += "," + fmt(v);
        out += "," + fmt(s.width);
        if (lobes && s.lobes) {
            for (int k = 0; k < 2; ++k) {
                out += "," + fmt(s.lobes->mass[k]);
                for (double v : s.lobes->centroid[k]) out += "," + fmt(v);
            }
        }
        out += "\n";
    }
    return out;
}

void write_snapshots(RunDir& run, const Trajectory& traj) {
    int i = 0;
    for (const auto& snap : traj.snapshots) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%04d.snwf", i++);
        write_snwf((run.dir / name).string(), {snap.psi, snap.t, "dimensionless", 1.0});
        run.note_file(name);
    }
}

// conservation drift over a trajectory relative to its first sample
struct Drift {
    double norm, energy, momentum;
};
Drift drift_of(const Trajectory& traj) {
    const auto& first = traj.samples.front();
    Drift d{0, 0, 0};
    for (const auto& s : traj.samples) {
        d.norm = std::max(d.norm, std::abs(s.norm2 - first.norm2));
        d.energy = std::max(d.energy, std::abs(s.total - first.total));
        double dp = 0;
        for (int k = 0; k < 3; ++k)
            dp += (s.momentum[k] - first.momentum[k]) * (s.momentum[k] - first.momentum[k]);
        d.momentum = std::max(d.momentum, std::sqrt(dp));
    }
    if (first.total != 0) d.energy /= std::abs(first.total);
    return d;
}

// spherically averaged radial profile of |psi| in bins of width h
std::string radial_profile_csv(const ComplexField& psi) {
    const UniformGrid& g = psi.grid;
    const int nbins = g.n / 2;
    std::vector<double> sum(nbins, 0.0);
    std::vector<int> count(nbins, 0);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const double x = g.coord(ix), y = g.coord(iy), z = g.coord(iz);
                const double r = std::sqrt(x * x + y * y + z * z);
                const int b = int(r / g.h);
                if (b < nbins) {
                    sum[b] += std::abs(psi.at(ix, iy, iz));
                    ++count[b];
                }
            }
    std::string out = "r,phi\n";
    for (int b = 0; b < nbins; ++b)
        if (count[b]) out += fmt((b + 0.5) * g.h) + "," + fmt(sum[b] / count[b]) + "\n";
    return out;
}

Vec3 unit_dir(const Vec3& v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(n > 0)) throw validation_error("direction vector must be nonzero");
    return {v[0] / n, v[1] / n, v[2] / n};
}

double vec_len(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace

RunRecord run_ground_state(const ScenarioConfig& cfg, const RunContext& ctx) {
    RunDir run(cfg, ctx);
    const UniformGrid grid = cfg.make_grid();
    const Kernel kernel = cfg.kernel();

    GroundStateResult res = minimize(grid, kernel, schedule_from(cfg, ctx));
    auto& m = run.rec.metrics;
    m["E_dimensionless"] = res.energy.total();
    m["T_dimensionless"] = res.energy.kinetic;
    m["W_dimensionless"] = res.energy.interaction;
    m["epsilon_dimensionless"] = res.epsilon;
    m["width_dimensionless"] = res.width;
    m["iterations"] = res.iterations;
    m["residual"] = res.residual;
    m["boundary_ratio"] = res.boundary_ratio;
    m["epsilon_over_E"] = res.epsilon / res.energy.total();

    if (cfg.physical) {
        const ScalingMap u = make_scaling(*cfg.physical);
        m["length_unit_cm"] = u.length_unit;
        m["time_unit_s"] = u.time_unit;
        m["energy_unit_erg"] = u.energy_unit;
        m["width_cm"] = res.width * u.length_unit;
        m["E_erg"] = res.energy.total() * u.energy_unit;
        m["epsilon_erg"] = res.epsilon * u.energy_unit;
    }

    write_snwf((run.dir / "field.snwf").string(), {res.phi0, 0.0, "dimensionless", 1.0});
    run.note_file("field.snwf");
    run.write_text("profile_grid.csv", radial_profile_csv(res.phi0));

    if (kernel.variant == Kernel::Variant::newtonian) {
        // cross-check against the independent radial oracle
        ShootingResult oracle = radial_shooting_oracle();
        const double de = std::abs(res.epsilon - oracle.epsilon) / std::abs(oracle.epsilon);
        const double dE =
            std::abs(res.energy.total() - oracle.energy.total()) / std::abs(oracle.energy.total());
        const double dw = std::abs(res.width - oracle.width) / oracle.width;
        m["oracle_epsilon"] = oracle.epsilon;
        m["oracle_E"] = oracle.energy.total();
        m["oracle_width"] = oracle.width;
        m["oracle_rel_diff_epsilon"] = de;
        m["oracle_rel_diff_E"] = dE;
        m["oracle_rel_diff_width"] = dw;
        std::string prof = "r,phi\n";
        const double s4pi = std::sqrt(4.0 * std::numbers::pi);
        for (std::size_t i = 1; i < oracle.u.r.size(); i += 8)
            prof += fmt(oracle.u.r[i]) + "," + fmt(oracle.u.values[i] / (s4pi * oracle.u.r[i])) + "\n";
        run.write_text("profile_oracle.csv", prof);
        if (de > 0.005 || dE > 0.005 || dw > 0.01)
            throw threshold_error(
                "ground-state: grid result disagrees with the radial oracle beyond "
                "(0.5%, 0.5%, 1%): eps " + fmt(de) + ", E " + fmt(dE) + ", width " + fmt(dw));
    } else if (kernel.variant == Kernel::Variant::harmonic_sphere) {
        const double sigma_exact = gaussian_variational(kernel).sigma_star;
        const double dw = std::abs(res.width - std::sqrt(3.0) * sigma_exact) /
                          (std::sqrt(3.0) * sigma_exact);
        m["exact_sigma"] = sigma_exact;
        m["rel_diff_width_vs_exact"] = dw;
        if (dw > 0.01)
            throw threshold_error("ground-state: width off the exact harmonic value by " +
                                  fmt(dw));
    }

    run.write_text("plots.gp",
                   "set datafile separator ','\n"
                   "set logscale y\n"
                   "set xlabel 'r'\nset ylabel '|phi|'\n"
                   "plot 'profile_grid.csv' skip 1 using 1:2 with lines title 'grid', \\\n"
                   "     'profile_oracle.csv' skip 1 using 1:2 with lines title 'oracle'\n");
    return run.finish();
}

RunRecord run_evolve(const ScenarioConfig& cfg, const RunContext& ctx) {
    RunDir run(cfg, ctx);
    const UniformGrid grid = cfg.make_grid();
    const Kernel kernel = cfg.kernel();

    ComplexField psi;
    if (cfg.init.type == "gaussian") {
        psi = gaussian_packet(grid, cfg.init.sigma, cfg.init.center);
        normalize_in_place(psi);
        if (vec_len(cfg.init.boost_velocity) > 0)
            psi = boost(psi, {0, 0, 0}, cfg.init.boost_velocity);
    } else if (cfg.init.type == "ground_state") {
        psi = minimize(grid, kernel, schedule_from(cfg, ctx)).phi0;
    } else {
        SnwfRecord rec = read_snwf(cfg.init.path);
        if (!(rec.field.grid == grid))
            throw validation_error("evolve: field file grid does not match config grid");
        psi = std::move(rec.field);
    }

    PropagatorConfig pc;
    pc.dt = cfg.evolve.dt;
    pc.steps = cfg.evolve.steps;
    pc.kernel = kernel;
    pc.monitor_stride = cfg.evolve.monitor_stride;
    pc.snapshot_stride = cfg.evolve.snapshot_stride;
    Trajectory traj = evolve(psi, pc);

    run.write_text("trajectory.csv", trajectory_csv(traj));
    write_snapshots(run, traj);

    const Drift d = drift_of(traj);
    auto& m = run.rec.metrics;
    m["norm_drift"] = d.norm;
    m["energy_drift_rel"] = d.energy;
    m["momentum_drift"] = d.momentum;
    m["final_width_dimensionless"] = traj.samples.back().width;
    m["boundary_warning"] = traj.boundary_warning ? 1.0 : 0.0;

    run.write_text("plots.gp",
                   "set datafile separator ','\n"
                   "set xlabel 't'\nset ylabel 'width'\n"
                   "plot 'trajectory.csv' skip 1 using 1:12 with lines title 'rms width'\n");

    if (d.norm > 1e-9)
        throw threshold_error("evolve: norm drift " + fmt(d.norm) +
                              " exceeds 1e-9; the splitting should be unitary");
    if (d.energy > 1e-4)
        throw threshold_error("evolve: relative energy drift " + fmt(d.energy) +
                              " exceeds 1e-4; reduce dt");
    return run.finish();
}

RunRecord run_sweep_mass(const ScenarioConfig& cfg, const RunContext& ctx) {
    if (cfg.masses_g.size() < 4)
        throw validation_error("sweep-mass: need at least 4 masses");
    for (double mgr : cfg.masses_g)
        if (!(mgr > 0)) throw validation_error("sweep-mass: masses must be > 0");
    const auto [lo, hi] = std::minmax_element(cfg.masses_g.begin(), cfg.masses_g.end());
    if (*hi / *lo < 100.0)
        throw validation_error("sweep-mass: masses must span at least 2 decades");

    RunDir run(cfg, ctx);

    // The dimensionless problem carries no free parameter, so one solve serves
    // every mass; each row is the same width mapped through its unit system.
    GroundStateResult res = minimize(cfg.make_grid(), cfg.kernel(), schedule_from(cfg, ctx));
    const double c_width = res.width;

    PhysicalParams base = cfg.physical.value_or(PhysicalParams{});
    std::string csv = "M_g,length_unit_cm,width_cm,ok\n";
    std::vector<double> lnM, lnW;
    int flagged = 0;
    for (double mass : cfg.masses_g) {
        PhysicalParams p = base;
        p.M = mass;
        const double unit = point_width_estimate(p);
        const double w_cm = c_width * unit;
        const bool ok = std::isfinite(unit) && std::isfinite(w_cm) && w_cm > 0;
        csv += fmt(mass) + "," + fmt(unit) + "," + fmt(w_cm) + "," + (ok ? "1" : "0") + "\n";
        if (ok) {
            lnM.push_back(std::log(mass));
            lnW.push_back(std::log(w_cm));
        } else {
            ++flagged;
        }
    }
    run.write_text("sweep.csv", csv);

    // least-squares slope of ln(width) vs ln(M)
    const std::size_t n = lnM.size();
    if (n < 2) throw convergence_error("sweep-mass: too few finite rows for a fit");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += lnM[i]; my += lnW[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lnM[i] - mx) * (lnM[i] - mx);
        sxy += (lnM[i] - mx) * (lnW[i] - my);
    }
    const double slope = sxy / sxx;

    auto& m = run.rec.metrics;
    m["slope_loglog"] = slope;
    m["width_dimensionless"] = c_width;
    m["prefactor_spread"] = 0.0;  // identical dimensionless solve for every row
    m["rows_flagged"] = flagged;
    m["E_dimensionless"] = res.energy.total();

    run.write_text("plots.gp",
                   "set datafile separator ','\n"
                   "set logscale xy\nset xlabel 'M [g]'\nset ylabel 'width [cm]'\n"
                   "plot 'sweep.csv' skip 1 using 1:3 with linespoints title 'width(M)'\n");
    return run.finish();
}

RunRecord run_sweep_radius(const ScenarioConfig& cfg, const RunContext& ctx) {
    RunDir run(cfg, ctx);
    if (cfg.radii.empty()) throw validation_error("sweep-radius: need radii");

    struct Row {
        double R, sigma_exact, width, sigma_grid;
        bool in_regime;
        int iterations;
    };
    std::vector<Row> rows(cfg.radii.size());

    auto solve_row = [&](std::size_t i) {
        const double R = cfg.radii[i];
        const Kernel kernel = Kernel::harmonic_sphere(R, cfg.kernel_strength);
        const double sigma_star = gaussian_variational(kernel).sigma_star;
        const double h = sigma_star / cfg.points_per_sigma;
        const UniformGrid grid(cfg.grid.n, h);
        DescentSchedule sched = schedule_from(cfg, ctx);
        GroundStateResult res =
            minimize(grid, kernel, gaussian_packet(grid, cfg.init_scale * sigma_star), sched);
        rows[i] = {R, sigma_star, res.width, res.width / std::sqrt(3.0),
                   res.width <= 0.35 * R, res.iterations};
    };

    const int workers = std::max(1, ctx.workers);
    for (std::size_t start = 0; start < rows.size(); start += workers) {
        std::vector<std::future<void>> batch;
        for (std::size_t i = start; i < std::min(rows.size(), start + workers); ++i)
            batch.push_back(std::async(std::launch::async, solve_row, i));
        for (auto& f : batch) f.get();
    }

    std::string csv = "R,sigma_exact,width_rms,sigma_grid,in_regime\n";
    std::vector<double> lnR, lnW;
    double max_sigma_err = 0, min_q = 1e300, max_q = 0;
    for (const auto& r : rows) {
        csv += fmt(r.R) + "," + fmt(r.sigma_exact) + "," + fmt(r.width) + "," +
               fmt(r.sigma_grid) + "," + (r.in_regime ? "1" : "0") + "\n";
        if (!r.in_regime) continue;
        lnR.push_back(std::log(r.R));
        lnW.push_back(std::log(r.width));
        max_sigma_err = std::max(max_sigma_err,
                                 std::abs(r.sigma_grid - r.sigma_exact) / r.sigma_exact);
        const double q = std::pow(r.sigma_grid, 4) / std::pow(r.R, 3);
        min_q = std::min(min_q, q);
        max_q = std::max(max_q, q);
    }
    run.write_text("sweep.csv", csv);
    if (lnR.size() < 2)
        throw validation_error("sweep-radius: fewer than 2 radii inside the width << R regime");

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lnR.size(); ++i) { mx += lnR[i]; my += lnW[i]; }
    mx /= lnR.size(); my /= lnR.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lnR.size(); ++i) {
        sxx += (lnR[i] - mx) * (lnR[i] - mx);
        sxy += (lnR[i] - mx) * (lnW[i] - my);
    }

    auto& m = run.rec.metrics;
    m["slope_loglog"] = sxy / sxx;
    m["max_rel_sigma_error"] = max_sigma_err;
    m["quartic_ratio_spread"] = (max_q - min_q) / (0.5 * (max_q + min_q));
    m["rows_in_regime"] = double(lnR.size());
    m["rows_total"] = double(rows.size());

    run.write_text("plots.gp",
                   "set datafile separator ','\n"
                   "set logscale xy\nset xlabel 'R'\nset ylabel 'width'\n"
                   "plot 'sweep.csv' skip 1 using 1:3 with linespoints title 'width(R)'\n");
    return run.finish();
}

RunRecord run_critical_size(const ScenarioConfig& cfg, const RunContext& ctx) {
    RunDir run(cfg, ctx);
    PhysicalParams base = cfg.physical.value_or(PhysicalParams{});
    const CriticalSize c = critical_size(cfg.rho_g_cm3, base.hbar, base.G);
    auto& m = run.rec.metrics;
    m["rho_g_cm3"] = cfg.rho_g_cm3;
    m["R_c_cm"] = c.r_c;
    m["R_c_ref1_cm"] = c.r_c_ref1;
    run.write_text("critical_size.csv",
                   "rho_g_cm3,R_c_cm,R_c_ref1_cm\n" + fmt(cfg.rho_g_cm3) + "," +
                       fmt(c.r_c) + "," + fmt(c.r_c_ref1) + "\n");
    return run.finish();
}

RunRecord run_two_soliton(const ScenarioConfig& cfg, const RunContext& ctx) {
    RunDir run(cfg, ctx);
    const UniformGrid grid = cfg.make_grid();
    const Kernel kernel = cfg.kernel();

    GroundStateResult gs = minimize(grid, kernel, schedule_from(cfg, ctx));
    const double width = gs.width;

    // snap the requested separation onto an even lattice vector
    const Vec3 dir = unit_dir(cfg.direction);
    Vec3 d{};
    for (int k = 0; k < 3; ++k)
        d[k] = 2.0 * grid.h * std::lround(cfg.separation_widths * width * dir[k] / (2.0 * grid.h));
    const double sep = vec_len(d);

    ComplexField psi = two_soliton_prepare(gs.phi0, d);
    PropagatorConfig pc;
    pc.dt = cfg.evolve.dt;
    pc.steps = cfg.evolve.steps;
    pc.kernel = kernel;
    pc.monitor_stride = cfg.evolve.monitor_stride;
    pc.snapshot_stride = cfg.evolve.snapshot_stride;
    pc.track_lobes = true;
    pc.lobe_axis = dir;
    Trajectory traj = evolve(psi, pc);

    run.write_text("trajectory.csv", trajectory_csv(traj));
    write_snapshots(run, traj);

    LobeAnalysis lob = lobe_acceleration(traj, width);
    std::string acsv = "t,separation,a_measured,a_predicted\n";
    for (std::size_t i = 0; i < lob.t.size(); ++i)
        acsv += fmt(lob.t[i]) + "," + fmt(lob.separation[i]) + "," +
                fmt(lob.a_measured[i]) + "," + fmt(lob.a_predicted[i]) + "\n";
    run.write_text("acceleration.csv", acsv);

    const Drift dr = drift_of(traj);
    auto& m = run.rec.metrics;
    m["soliton_width"] = width;
    m["separation"] = sep;
    m["a_measured_mean"] = lob.mean_measured;
    m["a_predicted_mean"] = lob.mean_predicted;
    m["a_ratio"] = lob.mean_measured / lob.mean_predicted;
    m["merged"] = lob.merged ? 1.0 : 0.0;
    m["norm_drift"] = dr.norm;
    m["energy_drift_rel"] = dr.energy;
    m["boundary_warning"] = traj.boundary_warning ? 1.0 : 0.0;

    run.write_text("plots.gp",
                   "set datafile separator ','\n"
                   "set xlabel 't'\nset ylabel 'lobe separation'\n"
                   "plot 'acceleration.csv' skip 1 using 1:2 with lines title 'd(t)'\n");
    if (dr.norm > 1e-9)
        throw threshold_error("two-soliton: norm drift " + fmt(dr.norm) + " exceeds 1e-9");
    return run.finish();
}

RunRecord run_boost_check(const ScenarioConfig& cfg, const RunContext& ctx) {
    RunDir run(cfg, ctx);
    const UniformGrid grid = cfg.make_grid();
    const Kernel kernel = cfg.kernel();
    const double dk = 2.0 * std::numbers::pi / grid.extent();
    const Vec3 v = {cfg.velocity_bins[0] * dk, cfg.velocity_bins[1] * dk,
                    cfg.velocity_bins[2] * dk};

    ComplexField psi0 = normalize(gaussian_packet(grid, cfg.sigma));

    PropagatorConfig pc;
    pc.dt = cfg.evolve.dt;
    pc.steps = cfg.evolve.steps;
    pc.kernel = kernel;
    pc.monitor_stride = cfg.evolve.monitor_stride;

    // path A: boost first, then evolve
    ComplexField path_a = boost(psi0, {0, 0, 0}, v);
    Trajectory traj_a = evolve(path_a, pc);

    // path B: evolve, then apply the boosted-frame map at time T
    ComplexField path_b = psi0;
    evolve(path_b, pc);
    const double T = cfg.evolve.dt * cfg.evolve.steps;
    path_b = shift_spectral(path_b, {v[0] * T, v[1] * T, v[2] * T});
    apply_plane_phase(path_b, v);
    const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    const double ph = -0.5 * v2 * T;
    const std::complex<double> global(std::cos(ph), std::sin(ph));
    for (auto& c : path_b.values) c *= global;

    double diff2 = 0;
    for (std::size_t i = 0; i < path_a.values.size(); ++i)
        diff2 += std::norm(path_a.values[i] - path_b.values[i]);
    const double err = std::sqrt(diff2 * grid.cell_volume());

    auto& m = run.rec.metrics;
    m["covariance_l2_error"] = err;
    m["boost_velocity"] = vec_len(v);
    m["momentum_shift_error"] = [&] {
        const Vec3 p = momentum_expectation(boost(psi0, {0, 0, 0}, v));
        const Vec3 p0 = momentum_expectation(psi0);
        double e = 0;
        for (int k = 0; k < 3; ++k)
            e += (p[k] - p0[k] - v[k]) * (p[k] - p0[k] - v[k]);
        return std::sqrt(e);
    }();
    run.write_text("trajectory.csv", trajectory_csv(traj_a));

    if (!ctx.quiet)
        std::fprintf(stderr, "boost-check: covariance L2 error %.3e\n", err);
    if (err > 1e-6)
        throw threshold_error("boost-check: covariance L2 error " + fmt(err) +
                              " exceeds 1e-6");
    return run.finish();
}

RunRecord run_separability(const ScenarioConfig& cfg, const RunContext& ctx) {
    RunDir run(cfg, ctx);
    const UniformGrid grid = cfg.make_grid();
    ComplexField a = normalize(gaussian_packet(grid, cfg.sigma));

    const Vec3 dir = unit_dir(cfg.direction);
    std::string csv = "d,cross_energy,cross_times_d,point_prediction\n";
    double min_cd = 1e300, max_cd = -1e300;
    double largest_d = 0, largest_err = 0;
    for (double dw : cfg.d_widths) {
        Vec3 d{};
        for (int k = 0; k < 3; ++k)
            d[k] = grid.h * std::lround(dw * cfg.sigma * dir[k] / grid.h);
        const double len = vec_len(d);
        CrossCoupling cc = cross_coupling(a, a, cfg.mass_a, cfg.mass_b, d);
        const double cd = cc.cross_energy * len;
        const double point = -cfg.mass_a * cfg.mass_b / len;
        csv += fmt(len) + "," + fmt(cc.cross_energy) + "," + fmt(cd) + "," + fmt(point) + "\n";
        min_cd = std::min(min_cd, cd);
        max_cd = std::max(max_cd, cd);
        if (len > largest_d) {
            largest_d = len;
            largest_err = std::abs(cc.cross_energy - point) / std::abs(point);
        }
    }
    run.write_text("cross_energy.csv", csv);

    auto& m = run.rec.metrics;
    m["cross_times_d_spread"] =
        (max_cd - min_cd) / std::abs(0.5 * (max_cd + min_cd));
    m["largest_d"] = largest_d;
    m["largest_d_rel_error_vs_point"] = largest_err;
    m["self_energy"] = cross_coupling(a, a, cfg.mass_a, cfg.mass_b, {0, 0, 0}).self_energy_a;

    run.write_text("plots.gp",
                   "set datafile separator ','\n"
                   "set xlabel 'd'\nset ylabel '-cross*d'\n"
                   "plot 'cross_energy.csv' skip 1 using 1:(-$3) with linespoints title "
                   "'cross energy times separation'\n");
    return run.finish();
}

RunRecord run_subcommand(const std::string& name, const ScenarioConfig& cfg,
                         const RunContext& ctx) {
    if (name == "ground-state") return run_ground_state(cfg, ctx);
    if (name == "evolve") return run_evolve(cfg, ctx);
    if (name == "sweep-mass") return run_sweep_mass(cfg, ctx);
    if (name == "sweep-radius") return run_sweep_radius(cfg, ctx);
    if (name == "critical-size") return run_critical_size(cfg, ctx);
    if (name == "two-soliton") return run_two_soliton(cfg, ctx);
    if (name == "boost-check") return run_boost_check(cfg, ctx);
    if (name == "separability") return run_separability(cfg, ctx);
    throw validation_error("unknown subcommand '" + name + "'");
}

}  // namespace snw
