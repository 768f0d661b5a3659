#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snw/field.hpp"
#include "snw/kernel.hpp"
#include "snw/units.hpp"

namespace snw {

// Scenario configuration, read from a JSON document validated against
// docs/config_schema.json. Unknown keys are rejected; every run echoes its
// fully resolved configuration (defaults filled in) into the output directory.

struct GridConfig {
    int n = 64;
    double h = 0.5;
};

struct SolverConfig {
    double tol = 1e-8;
    int max_iter = 50000;
    double dtau = 0.1;
};

struct EvolveConfig {
    double dt = 0.01;
    int steps = 1000;
    int snapshot_stride = 0;
    int monitor_stride = 1;
};

struct InitConfig {
    std::string type = "gaussian";  // gaussian | ground_state | file
    double sigma = 2.0;
    Vec3 center = {0, 0, 0};
    Vec3 boost_velocity = {0, 0, 0};
    std::string path;
};

struct ScenarioConfig {
    std::string subcommand;
    bool dimensionless = true;
    std::optional<PhysicalParams> physical;
    GridConfig grid;
    std::string kernel_variant = "newtonian";
    double kernel_radius = 0.0;
    double kernel_strength = 1.0;
    SolverConfig solver;
    EvolveConfig evolve;

    // experiment-specific (only the block matching `subcommand` may be set)
    InitConfig init;                                   // evolve
    std::vector<double> masses_g;                      // sweep-mass
    std::vector<double> radii;                         // sweep-radius
    double init_scale = 1.3;                           // sweep-radius
    double points_per_sigma = 6.0;                     // sweep-radius
    double rho_g_cm3 = 1.0;                            // critical-size
    double separation_widths = 10.0;                   // two-soliton
    Vec3 direction = {1, 0, 0};                        // two-soliton, separability
    double sigma = 2.0;                                // boost-check, separability
    std::array<int, 3> velocity_bins = {2, 0, 0};      // boost-check
    std::vector<double> d_widths = {20, 40, 80};       // separability
    double mass_a = 0.5, mass_b = 0.5;                 // separability

    Kernel kernel() const;
    UniformGrid make_grid() const;

    // Canonical resolved JSON (sorted keys, round-trip floats) and its hash.
    std::string canonical_json() const;
    std::string config_hash() const;  // 16 hex digits, FNV-1a over canonical_json
};

// Parse + validate. `subcommand` selects which experiment block is legal and
// which sections are required. Throws validation_error with the offending
// key path.
ScenarioConfig parse_config(const std::string& json_text, const std::string& subcommand);
ScenarioConfig load_config(const std::string& path, const std::string& subcommand);
ScenarioConfig default_config(const std::string& subcommand);

struct RunRecord {
    std::string run_id;
    std::string config_hash;
    std::map<std::string, double> metrics;
    std::vector<std::string> files;  // paths relative to the run directory
};

void write_run_record(const std::string& out_dir, const RunRecord& rec);
std::string fnv1a_hex(const std::string& data);

}  // namespace snw
