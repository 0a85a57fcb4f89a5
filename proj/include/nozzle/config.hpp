#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nozzle/background.hpp"

namespace nozzle {

// Experiment configuration parsed from a "[section] / key = value" text file.
// Angles carry the unit in the key name (radians).
struct ExperimentConfig {
    // [gas]
    double gamma = 1.4;
    double q0 = 1.2;
    double phi0_rad = M_PI / 6.0;
    double delta = -1.0;  // <= 0 selects the interior default

    // [grid]
    int n_phi = 129;
    double r_max = 100.0;
    int store_targets = 65;
    int store_every = 0;
    double cfl = 0.4;

    // [perturbation]
    // Default entrance data: a pure radial-velocity bump.  Displacement
    // content rings through the fit window at desk scale and masks the
    // asymptotic rates, so the default keeps the potential profile silent.
    double center_frac = 0.55;  // bump center as a fraction of phi0
    double width_frac = 0.2;    // bump half-width as a fraction of phi0
    double amplitude_Phi0 = 0.0;
    double amplitude_Phi1 = 1.0;
    std::vector<double> eps_list{0.0, 1e-3};

    // [diagnostics]
    std::vector<int> energy_k{0, 1};
    double decay_r_lo = 10.0;
    double decay_r_hi = 100.0;
    std::vector<int> ineq_families{1, 2, 3, 4};
    int ineq_members = 50;
    int ineq_levels = 3;
    double mu_override = 0.0;  // 0 = use 4*gamma-6
    bool coarse = false;       // relax the conservation threshold per the grid table

    // [output]
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 20240901;
    bool plot_data = false;
    int refine = 0;

    GasParams gas() const;
    BumpProfile profile_Phi0() const;
    BumpProfile profile_Phi1() const;
    int effective_n_phi() const { return ((n_phi - 1) << refine) + 1; }
    // Mass-conservation drift threshold from the refinement study table.
    double conservation_threshold() const;
};

ExperimentConfig parse_config_file(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace nozzle
