// Batch experiment runner for the divergent-nozzle flow laboratory.
//
// Subcommands: background, march, verify, ineq.  Exit codes: 0 pass,
// 2 check failure, 3 aborted march, 64 usage/config error, 74 I/O error.

#include <iostream>

#include <CLI11.hpp>

#include "nozzle/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"divergent-nozzle supersonic flow laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int refine = 0;
    bool plot_data = false;

    app.add_option("--config", config_path, "configuration file (key = value sections)");
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--seed", seed, "seed for randomized families")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--refine", refine, "halve the angular spacing this many times")
        ->check(CLI::Range(0, 4));
    app.add_flag("--plot-data", plot_data, "emit two-column plot files");

    auto* cmd_background = app.add_subcommand("background", "radial background tables");
    auto* cmd_march = app.add_subcommand("march", "perturbed marches per amplitude");
    auto* cmd_verify = app.add_subcommand("verify", "full verification sweep");
    auto* cmd_ineq = app.add_subcommand("ineq", "weighted interpolation ratio sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : nozzle::exit_code::kUsage;
    }

    nozzle::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = nozzle::parse_config_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed_set) cfg.seed = seed;
        cfg.refine = refine;
        if (plot_data) cfg.plot_data = true;
        (void)cfg.gas();  // final validation
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return nozzle::exit_code::kUsage;
    }

    try {
        if (cmd_background->parsed()) return nozzle::run_background(cfg);
        if (cmd_march->parsed()) return nozzle::run_march(cfg);
        if (cmd_verify->parsed()) return nozzle::run_verify(cfg);
        if (cmd_ineq->parsed()) return nozzle::run_ineq(cfg);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return nozzle::exit_code::kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return nozzle::exit_code::kCheckFailure;
    }
    return nozzle::exit_code::kUsage;
}
