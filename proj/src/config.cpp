#include "snw/config.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "snw/errors.hpp"

namespace snw {

using json = nlohmann::json;

Kernel ScenarioConfig::kernel() const {
    if (kernel_variant == "newtonian") return Kernel::newtonian(kernel_strength);
    if (kernel_variant == "sphere") return Kernel::sphere(kernel_radius, kernel_strength);
    if (kernel_variant == "harmonic_sphere")
        return Kernel::harmonic_sphere(kernel_radius, kernel_strength);
    if (kernel_variant == "none") return Kernel::none();
    throw validation_error("kernel.variant must be one of newtonian, sphere, "
                           "harmonic_sphere, none (got '" + kernel_variant + "')");
}

UniformGrid ScenarioConfig::make_grid() const { return UniformGrid(grid.n, grid.h); }

namespace {

const std::set<std::string> kSubcommands = {
    "ground-state", "evolve",      "sweep-mass", "sweep-radius",
    "critical-size", "two-soliton", "boost-check", "separability"};

void require_keys(const json& j, const std::string& section,
                  const std::set<std::string>& allowed) {
    if (!j.is_object())
        throw validation_error("config: '" + section + "' must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw validation_error("config: unknown key '" + section +
                                   (section.empty() ? "" : ".") + it.key() + "'");
}

double get_num(const json& j, const std::string& path) {
    if (!j.is_number())
        throw validation_error("config: '" + path + "' must be a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw validation_error("config: '" + path + "' must be an integer");
    return j.get<int>();
}

Vec3 get_vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3)
        throw validation_error("config: '" + path + "' must be an array of 3 numbers");
    return {get_num(j[0], path), get_num(j[1], path), get_num(j[2], path)};
}

std::vector<double> get_num_list(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty())
        throw validation_error("config: '" + path + "' must be a non-empty array");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(get_num(v, path));
    return out;
}

void apply_physical(ScenarioConfig& cfg, const json& j) {
    require_keys(j, "physical", {"hbar", "G", "M", "R", "rho"});
    PhysicalParams p;
    if (j.contains("hbar")) p.hbar = get_num(j["hbar"], "physical.hbar");
    if (j.contains("G")) p.G = get_num(j["G"], "physical.G");
    if (j.contains("M")) p.M = get_num(j["M"], "physical.M");
    if (j.contains("R")) p.R = get_num(j["R"], "physical.R");
    if (j.contains("rho")) p.rho = get_num(j["rho"], "physical.rho");
    p.validate();
    cfg.physical = p;
    cfg.dimensionless = false;
}

void apply_experiment(ScenarioConfig& cfg, const json& j) {
    const std::string& sub = cfg.subcommand;
    if (sub == "ground-state") {
        require_keys(j, "experiment", {});
    } else if (sub == "evolve") {
        require_keys(j, "experiment", {"init"});
        if (j.contains("init")) {
            const json& i = j["init"];
            require_keys(i, "experiment.init",
                         {"type", "sigma", "center", "boost_velocity", "path"});
            if (i.contains("type")) cfg.init.type = i["type"].get<std::string>();
            if (cfg.init.type != "gaussian" && cfg.init.type != "ground_state" &&
                cfg.init.type != "file")
                throw validation_error(
                    "config: experiment.init.type must be gaussian, ground_state or file");
            if (i.contains("sigma")) cfg.init.sigma = get_num(i["sigma"], "init.sigma");
            if (i.contains("center")) cfg.init.center = get_vec3(i["center"], "init.center");
            if (i.contains("boost_velocity"))
                cfg.init.boost_velocity = get_vec3(i["boost_velocity"], "init.boost_velocity");
            if (i.contains("path")) cfg.init.path = i["path"].get<std::string>();
            if (cfg.init.type == "file" && cfg.init.path.empty())
                throw validation_error("config: experiment.init.path required for type=file");
        }
    } else if (sub == "sweep-mass") {
        require_keys(j, "experiment", {"masses_g"});
        if (j.contains("masses_g"))
            cfg.masses_g = get_num_list(j["masses_g"], "experiment.masses_g");
    } else if (sub == "sweep-radius") {
        require_keys(j, "experiment", {"radii", "init_scale", "points_per_sigma"});
        if (j.contains("radii")) cfg.radii = get_num_list(j["radii"], "experiment.radii");
        if (j.contains("init_scale"))
            cfg.init_scale = get_num(j["init_scale"], "experiment.init_scale");
        if (j.contains("points_per_sigma"))
            cfg.points_per_sigma = get_num(j["points_per_sigma"], "experiment.points_per_sigma");
    } else if (sub == "critical-size") {
        require_keys(j, "experiment", {"rho_g_cm3"});
        if (j.contains("rho_g_cm3"))
            cfg.rho_g_cm3 = get_num(j["rho_g_cm3"], "experiment.rho_g_cm3");
        if (!(cfg.rho_g_cm3 > 0))
            throw validation_error("config: experiment.rho_g_cm3 must be > 0");
    } else if (sub == "two-soliton") {
        require_keys(j, "experiment", {"separation_widths", "direction"});
        if (j.contains("separation_widths"))
            cfg.separation_widths = get_num(j["separation_widths"], "experiment.separation_widths");
        if (j.contains("direction"))
            cfg.direction = get_vec3(j["direction"], "experiment.direction");
    } else if (sub == "boost-check") {
        require_keys(j, "experiment", {"sigma", "velocity_bins"});
        if (j.contains("sigma")) cfg.sigma = get_num(j["sigma"], "experiment.sigma");
        if (j.contains("velocity_bins")) {
            const json& vb = j["velocity_bins"];
            if (!vb.is_array() || vb.size() != 3)
                throw validation_error("config: experiment.velocity_bins must be 3 integers");
            for (int k = 0; k < 3; ++k)
                cfg.velocity_bins[k] = get_int(vb[k], "experiment.velocity_bins");
        }
    } else if (sub == "separability") {
        require_keys(j, "experiment",
                     {"sigma", "d_widths", "direction", "mass_a", "mass_b"});
        if (j.contains("sigma")) cfg.sigma = get_num(j["sigma"], "experiment.sigma");
        if (j.contains("d_widths"))
            cfg.d_widths = get_num_list(j["d_widths"], "experiment.d_widths");
        if (j.contains("direction"))
            cfg.direction = get_vec3(j["direction"], "experiment.direction");
        if (j.contains("mass_a")) cfg.mass_a = get_num(j["mass_a"], "experiment.mass_a");
        if (j.contains("mass_b")) cfg.mass_b = get_num(j["mass_b"], "experiment.mass_b");
        if (cfg.mass_a < 0 || cfg.mass_b < 0)
            throw validation_error("config: mass fractions must be >= 0");
    }
}

}  // namespace

ScenarioConfig default_config(const std::string& subcommand) {
    if (!kSubcommands.count(subcommand))
        throw validation_error("unknown subcommand '" + subcommand + "'");
    ScenarioConfig cfg;
    cfg.subcommand = subcommand;
    if (subcommand == "ground-state") {
        cfg.grid = {128, 0.5};
        cfg.solver.tol = 2e-6;
    } else if (subcommand == "evolve") {
        cfg.grid = {64, 0.5};
        cfg.evolve = {0.01, 1000, 0, 10};
        cfg.init = {};
    } else if (subcommand == "sweep-mass") {
        cfg.grid = {64, 0.7};
        cfg.solver.tol = 2e-6;
        cfg.masses_g = {1e-3, 1e-2, 1e-1, 1.0, 10.0};
        PhysicalParams p;
        p.M = cfg.masses_g.front();
        cfg.physical = p;
        cfg.dimensionless = false;
    } else if (subcommand == "sweep-radius") {
        cfg.grid = {128, 0.5};  // h is re-derived per radius
        cfg.solver.tol = 1e-7;
        cfg.kernel_variant = "harmonic_sphere";
        cfg.kernel_radius = 256.0;
        cfg.radii = {256.0, 1024.0, 4096.0, 16384.0};
    } else if (subcommand == "critical-size") {
        cfg.rho_g_cm3 = 1.0;
    } else if (subcommand == "two-soliton") {
        cfg.grid = {128, 0.75};
        cfg.solver.tol = 2e-6;
        cfg.evolve = {0.02, 200, 0, 10};
        cfg.separation_widths = 10.0;
        cfg.direction = {1, 0, 0};
    } else if (subcommand == "boost-check") {
        cfg.grid = {64, 0.5};
        cfg.evolve = {0.01, 100, 0, 10};
        cfg.sigma = 2.0;
        cfg.velocity_bins = {2, 0, 0};
    } else if (subcommand == "separability") {
        cfg.grid = {128, 0.5};
        cfg.sigma = 1.0;
        cfg.d_widths = {20, 40, 80};
        cfg.direction = {1, 1, 1};
    }
    return cfg;
}

ScenarioConfig parse_config(const std::string& text, const std::string& subcommand) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw validation_error(std::string("config: malformed JSON: ") + e.what());
    }
    require_keys(j, "",
                 {"physical", "dimensionless", "grid", "kernel", "solver", "evolve",
                  "experiment"});

    ScenarioConfig cfg = default_config(subcommand);

    if (j.contains("physical") && j.contains("dimensionless") &&
        j["dimensionless"].is_boolean() && j["dimensionless"].get<bool>())
        throw validation_error("config: 'physical' and 'dimensionless: true' are exclusive");
    if (j.contains("physical")) apply_physical(cfg, j["physical"]);
    if (j.contains("dimensionless")) {
        if (!j["dimensionless"].is_boolean())
            throw validation_error("config: 'dimensionless' must be a boolean");
        cfg.dimensionless = j["dimensionless"].get<bool>();
        if (cfg.dimensionless) cfg.physical.reset();
    }

    if (j.contains("grid")) {
        require_keys(j["grid"], "grid", {"n", "h"});
        if (j["grid"].contains("n")) cfg.grid.n = get_int(j["grid"]["n"], "grid.n");
        if (j["grid"].contains("h")) cfg.grid.h = get_num(j["grid"]["h"], "grid.h");
    }
    UniformGrid(cfg.grid.n, cfg.grid.h);  // validates

    if (j.contains("kernel")) {
        require_keys(j["kernel"], "kernel", {"variant", "R", "strength"});
        if (j["kernel"].contains("variant"))
            cfg.kernel_variant = j["kernel"]["variant"].get<std::string>();
        if (j["kernel"].contains("R"))
            cfg.kernel_radius = get_num(j["kernel"]["R"], "kernel.R");
        if (j["kernel"].contains("strength"))
            cfg.kernel_strength = get_num(j["kernel"]["strength"], "kernel.strength");
    }
    cfg.kernel();  // validates variant/R

    if (j.contains("solver")) {
        require_keys(j["solver"], "solver", {"tol", "max_iter", "dtau"});
        if (j["solver"].contains("tol"))
            cfg.solver.tol = get_num(j["solver"]["tol"], "solver.tol");
        if (j["solver"].contains("max_iter"))
            cfg.solver.max_iter = get_int(j["solver"]["max_iter"], "solver.max_iter");
        if (j["solver"].contains("dtau"))
            cfg.solver.dtau = get_num(j["solver"]["dtau"], "solver.dtau");
        if (!(cfg.solver.tol > 0) || !(cfg.solver.dtau > 0) || cfg.solver.max_iter < 1)
            throw validation_error("config: solver values must be positive");
    }

    if (j.contains("evolve")) {
        require_keys(j["evolve"], "evolve",
                     {"dt", "steps", "snapshot_stride", "monitor_stride"});
        if (j["evolve"].contains("dt"))
            cfg.evolve.dt = get_num(j["evolve"]["dt"], "evolve.dt");
        if (j["evolve"].contains("steps"))
            cfg.evolve.steps = get_int(j["evolve"]["steps"], "evolve.steps");
        if (j["evolve"].contains("snapshot_stride"))
            cfg.evolve.snapshot_stride =
                get_int(j["evolve"]["snapshot_stride"], "evolve.snapshot_stride");
        if (j["evolve"].contains("monitor_stride"))
            cfg.evolve.monitor_stride =
                get_int(j["evolve"]["monitor_stride"], "evolve.monitor_stride");
        if (!(cfg.evolve.dt > 0) || cfg.evolve.steps < 1 || cfg.evolve.monitor_stride < 1 ||
            cfg.evolve.snapshot_stride < 0)
            throw validation_error("config: evolve values out of range");
    }

    if (j.contains("experiment")) apply_experiment(cfg, j["experiment"]);
    return cfg;
}

ScenarioConfig load_config(const std::string& path, const std::string& subcommand) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot open config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), subcommand);
}

std::string ScenarioConfig::canonical_json() const {
    json j;  // nlohmann::json sorts keys, so the dump is canonical
    j["subcommand"] = subcommand;
    j["dimensionless"] = dimensionless;
    if (physical) {
        json p;
        p["hbar"] = physical->hbar;
        p["G"] = physical->G;
        p["M"] = physical->M;
        if (physical->R) p["R"] = *physical->R;
        if (physical->rho) p["rho"] = *physical->rho;
        j["physical"] = p;
    }
    j["grid"] = {{"n", grid.n}, {"h", grid.h}};
    json k;
    k["variant"] = kernel_variant;
    k["strength"] = kernel_strength;
    if (kernel_variant == "sphere" || kernel_variant == "harmonic_sphere")
        k["R"] = kernel_radius;
    j["kernel"] = k;
    j["solver"] = {{"tol", solver.tol}, {"max_iter", solver.max_iter}, {"dtau", solver.dtau}};

    const std::string& sub = subcommand;
    if (sub == "evolve" || sub == "two-soliton" || sub == "boost-check")
        j["evolve"] = {{"dt", evolve.dt},
                       {"steps", evolve.steps},
                       {"snapshot_stride", evolve.snapshot_stride},
                       {"monitor_stride", evolve.monitor_stride}};
    json e;
    if (sub == "evolve") {
        json i;
        i["type"] = init.type;
        if (init.type == "gaussian") {
            i["sigma"] = init.sigma;
            i["center"] = init.center;
            i["boost_velocity"] = init.boost_velocity;
        }
        if (init.type == "file") i["path"] = init.path;
        e["init"] = i;
    } else if (sub == "sweep-mass") {
        e["masses_g"] = masses_g;
    } else if (sub == "sweep-radius") {
        e["radii"] = radii;
        e["init_scale"] = init_scale;
        e["points_per_sigma"] = points_per_sigma;
    } else if (sub == "critical-size") {
        e["rho_g_cm3"] = rho_g_cm3;
    } else if (sub == "two-soliton") {
        e["separation_widths"] = separation_widths;
        e["direction"] = direction;
    } else if (sub == "boost-check") {
        e["sigma"] = sigma;
        e["velocity_bins"] = velocity_bins;
    } else if (sub == "separability") {
        e["sigma"] = sigma;
        e["d_widths"] = d_widths;
        e["direction"] = direction;
        e["mass_a"] = mass_a;
        e["mass_b"] = mass_b;
    }
    if (!e.is_null()) j["experiment"] = e;
    return j.dump(2);
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string ScenarioConfig::config_hash() const { return fnv1a_hex(canonical_json()); }

void write_run_record(const std::string& out_dir, const RunRecord& rec) {
    json j;
    j["run_id"] = rec.run_id;
    j["config_hash"] = rec.config_hash;
    j["metrics"] = rec.metrics;
    j["files"] = rec.files;
    std::ofstream f(std::filesystem::path(out_dir) / "run.json");
    if (!f) throw validation_error("cannot write run.json in " + out_dir);
    f << j.dump(2) << "\n";
}

}  // namespace snw
