// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Uses the default configuration (gamma = 1.4, q0 = 1.2,
// phi0 = pi/6, C0 = 1) with every tolerance pinned at compile time.

#include <cstdio>
#include <string>
#include <vector>

#include "nozzle/verify.hpp"

using nozzle::CheckResult;

namespace {

struct Criterion {
    const char* label;
    std::vector<std::string> prefixes;
};

bool starts_with_any(const std::string& name, const std::vector<std::string>& prefixes) {
    for (const auto& p : prefixes)
        if (name.rfind(p, 0) == 0) return true;
    return false;
}

}  // namespace

int main() {
    nozzle::ExperimentConfig cfg;  // spec defaults

    std::vector<CheckResult> all;
    auto append = [&](std::vector<CheckResult> group) {
        all.insert(all.end(), group.begin(), group.end());
    };
    append(nozzle::verify_background_checks(cfg));
    append(nozzle::verify_certificate_checks(cfg));
    append(nozzle::verify_unperturbed_convergence(cfg));
    append(nozzle::verify_perturbed_march(cfg));
    append(nozzle::verify_energy_scaling(cfg));
    append(nozzle::verify_toolkit(cfg));

    const std::vector<Criterion> criteria{
        {"1 background conservation",
         {"background.conservation_rel", "background.table_runtime_s"}},
        {"2 background asymptotics",
         {"background.rho_slope_err", "background.c2_slope_err", "background.far_speed_err",
          "background.monotonic", "background.signs"}},
        {"3 coefficient signs and limits",
         {"background.signs", "background.P2_limit_product", "background.coeff_fd_rel"}},
        {"4 multiplier certificates", {"certificates."}},
        {"5 unperturbed march consistency", {"march0."}},
        {"6 global perturbed march",
         {"march.completed", "march.min_hyperbolicity", "march.min_cavitation",
          "march.flux_drift_default", "march.flux_drift_refined"}},
        {"7 decay rates", {"decay.", "march.c2_band_low", "march.c2_band_high"}},
        {"8 energy scaling", {"energy."}},
        {"9 analysis toolkit", {"zfields.", "extension.", "interpolation."}},
    };

    int failed_criteria = 0;
    for (const auto& c : criteria) {
        bool pass = true;
        std::string failures;
        for (const auto& r : all) {
            if (!starts_with_any(r.name, c.prefixes)) continue;
            if (!r.pass) {
                pass = false;
                failures += " " + r.name + "(measured " + std::to_string(r.measured) +
                            " vs " + std::to_string(r.threshold) + ")";
            }
        }
        std::printf("%s criterion %s%s\n", pass ? "PASS" : "FAIL", c.label,
                    failures.c_str());
        if (!pass) ++failed_criteria;
    }
    return failed_criteria;
}
