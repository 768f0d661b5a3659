// snw — solver suite and experiment runner for the gravitationally
// self-interacting wave equation.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "snw/errors.hpp"
#include "snw/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Self-gravitating wave-packet solver suite"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the global flags after the subcommand name too

    std::string config_path;
    std::string out_dir;
    int workers = 1;
    bool quiet = false;
    app.add_option("--config", config_path, "scenario config JSON (defaults per subcommand)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (default runs/<run-id>)");
    app.add_option("--workers", workers, "parallel sweep workers")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "suppress progress output");

    const char* subs[] = {"ground-state", "evolve",      "sweep-mass", "sweep-radius",
                          "critical-size", "two-soliton", "boost-check", "separability"};
    const char* desc[] = {
        "solve the self-localized ground state and cross-check the radial oracle",
        "propagate an initial state, monitoring the conserved quantities",
        "ground-state width against mass, cgs units (the width ~ M^-3 law)",
        "ground-state width against sphere radius, harmonic kernel (the R^{3/4} law)",
        "critical radius where the natural width equals the object size",
        "superpose two displaced solitons and measure their mutual attraction",
        "verify that a velocity boost commutes with the evolution",
        "cross-coupling energy of two distant factors against the 1/d law"};
    for (int i = 0; i < 8; ++i) app.add_subcommand(subs[i], desc[i]);

    CLI11_PARSE(app, argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();

    try {
        snw::ScenarioConfig cfg = config_path.empty()
                                      ? snw::default_config(name)
                                      : snw::load_config(config_path, name);
        snw::RunContext ctx{out_dir, workers, quiet};
        snw::RunRecord rec = snw::run_subcommand(name, cfg, ctx);
        if (!quiet) {
            std::printf("run %s\n", rec.run_id.c_str());
            for (const auto& [key, value] : rec.metrics)
                std::printf("  %-32s %.12g\n", key.c_str(), value);
        }
        return 0;
    } catch (const snw::validation_error& e) {
        std::fprintf(stderr, "error (validation): %s\n", e.what());
        return 2;
    } catch (const snw::no_ground_state_error& e) {
        std::fprintf(stderr, "error (no ground state): %s\n", e.what());
        return 3;
    } catch (const snw::convergence_error& e) {
        std::fprintf(stderr, "error (convergence): %s\n", e.what());
        return 3;
    } catch (const snw::threshold_error& e) {
        std::fprintf(stderr, "error (threshold): %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
