#pragma once

#include <string>

#include "snw/config.hpp"

namespace snw {

struct RunContext {
    std::string out_dir;
    int workers = 1;
    bool quiet = false;
};

// Named experiments behind the CLI subcommands. Each one drives the solvers,
// writes a self-contained run directory (config echo, summary record, CSVs,
// SNWF1 snapshots, a gnuplot script where there is something to plot) and
// returns the summary record. Quality gates throw threshold_error;
// solver failures propagate as convergence errors.
RunRecord run_ground_state(const ScenarioConfig& cfg, const RunContext& ctx);
RunRecord run_evolve(const ScenarioConfig& cfg, const RunContext& ctx);
RunRecord run_sweep_mass(const ScenarioConfig& cfg, const RunContext& ctx);
RunRecord run_sweep_radius(const ScenarioConfig& cfg, const RunContext& ctx);
RunRecord run_critical_size(const ScenarioConfig& cfg, const RunContext& ctx);
RunRecord run_two_soliton(const ScenarioConfig& cfg, const RunContext& ctx);
RunRecord run_boost_check(const ScenarioConfig& cfg, const RunContext& ctx);
RunRecord run_separability(const ScenarioConfig& cfg, const RunContext& ctx);

RunRecord run_subcommand(const std::string& name, const ScenarioConfig& cfg,
                         const RunContext& ctx);

}  // namespace snw
