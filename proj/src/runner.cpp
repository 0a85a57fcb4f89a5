#include "nozzle/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nozzle/csvio.hpp"
#include "nozzle/diagnostics.hpp"
#include "nozzle/interpolation.hpp"
#include "nozzle/verify.hpp"

namespace nozzle {

namespace {

namespace fs = std::filesystem;

// Output directories are created on demand; failures map to the I/O exit code.
bool prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return false;
    const fs::path probe = dir / ".write_probe";
    std::ofstream test(probe);
    if (!test) return false;
    test.close();
    fs::remove(probe, ec);
    return true;
}

std::string eps_tag(double eps) {
    std::ostringstream ss;
    ss << "eps_" << eps;
    return ss.str();
}

void write_metadata(const fs::path& path, const ExperimentConfig& cfg,
                    const MarchTrace* trace = nullptr) {
    std::ofstream out(path);
    out << "gamma = " << fmt17(cfg.gamma) << "\n";
    out << "q0 = " << fmt17(cfg.q0) << "\n";
    out << "phi0_rad = " << fmt17(cfg.phi0_rad) << "\n";
    out << "n_phi = " << cfg.effective_n_phi() << "\n";
    out << "r_max = " << fmt17(cfg.r_max) << "\n";
    out << "cfl = " << fmt17(cfg.cfl) << "\n";
    out << "seed = " << cfg.seed << "\n";
    if (trace) {
        out << "steps_taken = " << trace->steps_taken << "\n";
        double min_hyp = std::numeric_limits<double>::infinity();
        double min_cav = std::numeric_limits<double>::infinity();
        for (const auto& g : trace->guard_log) {
            min_hyp = std::min(min_hyp, g.min_hyperbolicity);
            min_cav = std::min(min_cav, g.min_cavitation);
        }
        out << "min_hyperbolicity = " << fmt17(min_hyp) << "\n";
        out << "min_cavitation = " << fmt17(min_cav) << "\n";
        out << "completed = " << (trace->completed() ? 1 : 0) << "\n";
        if (trace->aborted) {
            out << "aborted_at = " << fmt17(trace->aborted->r) << "\n";
            out << "aborted_reason = " << trace->aborted->reason << "\n";
        }
    }
}

int report_results(const std::vector<CheckResult>& results, const fs::path& report_path) {
    std::ofstream report(report_path);
    int failures = 0;
    for (const auto& c : results) {
        const char* verdict = c.pass ? "PASS" : "FAIL";
        report << verdict << " " << c.name << " measured=" << fmt17(c.measured)
               << " threshold=" << fmt17(c.threshold);
        if (!c.detail.empty()) report << " (" << c.detail << ")";
        report << "\n";
        if (!c.pass) {
            ++failures;
            std::cerr << "FAIL " << c.name << ": measured " << c.measured
                      << " vs threshold " << c.threshold << "\n";
        }
    }
    return failures;
}

}  // namespace

int run_background(const ExperimentConfig& cfg) {
    if (!prepare_dir(cfg.out_dir / "background")) return exit_code::kIo;
    const fs::path dir = cfg.out_dir / "background";
    const GasParams p = cfg.gas();

    const auto radii = log_spaced_radii(1e6, 200);
    const auto table = background_table(radii, p);
    {
        CsvWriter csv(dir / "background.csv", "r,rho,U,c2,P1,P2,dP1,dP2");
        for (const auto& s : table)
            csv.row({fmt17(s.r), fmt17(s.rho_hat), fmt17(s.U_hat), fmt17(s.c2), fmt17(s.P1),
                     fmt17(s.P2), fmt17(s.dP1_dr), fmt17(s.dP2_dr)});
    }
    if (cfg.plot_data) {
        CsvWriter rho_dat(dir / "rho_vs_r.dat", "r,rho");
        CsvWriter c2_dat(dir / "c2_vs_r.dat", "r,c2");
        for (const auto& s : table) {
            rho_dat.row({fmt17(s.r), fmt17(s.rho_hat)});
            c2_dat.row({fmt17(s.r), fmt17(s.c2)});
        }
    }

    const auto results = verify_background_checks(cfg);
    {
        std::vector<double> rho_series;
        for (const auto& s : table) rho_series.push_back(s.rho_hat);
        const auto fit = decay_fit(radii, rho_series, 1e2, 1e4, "rho");
        CsvWriter csv(dir / "decay_fits.csv", "quantity,r_lo,r_hi,slope,residual");
        csv.row({fit.quantity, fmt17(fit.r_lo), fmt17(fit.r_hi), fmt17(fit.slope),
                 fmt17(fit.residual)});
        std::vector<double> c2_series;
        for (const auto& s : table) c2_series.push_back(s.c2);
        const auto fit2 = decay_fit(radii, c2_series, 1e2, 1e4, "c2");
        csv.row({fit2.quantity, fmt17(fit2.r_lo), fmt17(fit2.r_hi), fmt17(fit2.slope),
                 fmt17(fit2.residual)});
    }
    write_metadata(dir / "meta.txt", cfg);
    const int failures = report_results(results, dir / "report.txt");
    return failures == 0 ? exit_code::kOk : exit_code::kCheckFailure;
}

int run_march(const ExperimentConfig& cfg) {
    if (!prepare_dir(cfg.out_dir / "march")) return exit_code::kIo;
    const GasParams p = cfg.gas();
    const BumpProfile f0 = cfg.profile_Phi0();
    const BumpProfile f1 = cfg.profile_Phi1();

    MarchOptions opts;
    opts.n_phi = cfg.effective_n_phi();
    opts.cfl = cfg.cfl;
    opts.store_targets = cfg.store_targets;
    opts.store_every = cfg.store_every;

    bool any_aborted = false;
    std::string abort_detail;
    for (double eps : cfg.eps_list) {
        const fs::path dir = cfg.out_dir / "march" / eps_tag(eps);
        if (!prepare_dir(dir)) return exit_code::kIo;
        const auto trace = march(f0, f1, eps, cfg.r_max, p, opts);
        {
            CsvWriter csv(dir / "trace.csv", "r,phi,Phi,dPhi_dr,dPhi_dphi,rho,c2,mach_radial");
            for (const auto& s : trace.slices) {
                const AngularDerivative ops = slice_ops(s, p);
                const auto f = slice_fields(s, p, ops);
                for (int i = 0; i < s.n(); ++i) {
                    const double mach =
                        f.c2[i] > 0.0 ? s.V[i] / std::sqrt(f.c2[i]) : 0.0;
                    csv.row({fmt17(s.r), fmt17(s.grid.nodes[i]), fmt17(s.Phi[i]),
                             fmt17(s.V[i]), fmt17(f.dPhi_dphi[i]), fmt17(f.rho[i]),
                             fmt17(f.c2[i]), fmt17(mach)});
                }
            }
        }
        write_metadata(dir / "meta.txt", cfg, &trace);
        if (cfg.plot_data && trace.completed()) {
            const auto series = decay_series(trace);
            CsvWriter d1(dir / "sup_dr_vs_r.dat", "r,sup_dr");
            CsvWriter d2(dir / "sup_Z_vs_r.dat", "r,sup_Z_over_r");
            for (std::size_t i = 0; i < series.r.size(); ++i) {
                d1.row({fmt17(series.r[i]), fmt17(series.sup_dr[i])});
                d2.row({fmt17(series.r[i]), fmt17(series.sup_Z_r[i])});
            }
        }
        if (!trace.completed()) {
            any_aborted = true;
            abort_detail = eps_tag(eps) + " aborted at r = " + fmt17(trace.aborted->r) +
                           ": " + trace.aborted->reason;
            std::cerr << abort_detail << "\n";
        }
    }
    return any_aborted ? exit_code::kAbortedMarch : exit_code::kOk;
}

int run_verify(const ExperimentConfig& cfg) {
    if (!prepare_dir(cfg.out_dir / "verify")) return exit_code::kIo;
    const fs::path dir = cfg.out_dir / "verify";
    const GasParams p = cfg.gas();

    const auto results = verify_all(cfg);

    // Companion data products: energy table and inequality ratios.
    {
        const BumpProfile f0 = cfg.profile_Phi0();
        const BumpProfile f1 = cfg.profile_Phi1();
        MarchOptions opts;
        opts.n_phi = cfg.effective_n_phi();
        opts.cfl = cfg.cfl;
        opts.store_targets = cfg.store_targets;
        CsvWriter csv(dir / "energy.csv", "k,T,surface_dr,surface_Z,volume_dr,volume_Z,eps");
        std::vector<double> T_values;
        for (double T : log_spaced_radii(cfg.r_max, cfg.store_targets))
            if (T >= cfg.decay_r_lo && T <= cfg.decay_r_hi) T_values.push_back(T);
        for (double eps : {5e-4, 1e-3, 2e-3}) {
            const auto trace = march(f0, f1, eps, cfg.r_max, p, opts);
            if (!trace.completed()) continue;
            for (int k : cfg.energy_k) {
                const auto rep = weighted_energy(trace, k, eps, T_values);
                for (std::size_t i = 0; i < rep.T_values.size(); ++i)
                    csv.row({std::to_string(k), fmt17(rep.T_values[i]),
                             fmt17(rep.surface_dr[i]), fmt17(rep.surface_Z[i]),
                             fmt17(rep.volume_dr[i]), fmt17(rep.volume_Z[i]), fmt17(eps)});
            }
        }
    }
    {
        CsvWriter csv(dir / "ineq.csv", "ineq_id,family_member,grid_level,ratio");
        for (int which : cfg.ineq_families) {
            const auto sweep =
                inequality_family_sweep(which, cfg.ineq_members, cfg.ineq_levels, p.gamma,
                                        p.sigma, p.delta, p.phi0, cfg.seed);
            for (const auto& s : sweep)
                csv.row({std::to_string(s.which), std::to_string(s.member),
                         std::to_string(s.grid_level), fmt17(s.ratio)});
        }
    }
    write_metadata(dir / "meta.txt", cfg);
    const int failures = report_results(results, dir / "report.txt");
    return failures == 0 ? exit_code::kOk : exit_code::kCheckFailure;
}

int run_ineq(const ExperimentConfig& cfg) {
    if (!prepare_dir(cfg.out_dir / "ineq")) return exit_code::kIo;
    const GasParams p = cfg.gas();
    CsvWriter csv(cfg.out_dir / "ineq" / "ineq.csv",
                  "ineq_id,family_member,grid_level,ratio");
    bool healthy = true;
    for (int which : cfg.ineq_families) {
        const auto sweep = inequality_family_sweep(which, cfg.ineq_members, cfg.ineq_levels,
                                                   p.gamma, p.sigma, p.delta, p.phi0,
                                                   cfg.seed);
        for (const auto& s : sweep) {
            healthy = healthy && std::isfinite(s.ratio) && s.ratio > 0.0;
            csv.row({std::to_string(s.which), std::to_string(s.member),
                     std::to_string(s.grid_level), fmt17(s.ratio)});
        }
    }
    write_metadata(cfg.out_dir / "ineq" / "meta.txt", cfg);
    return healthy ? exit_code::kOk : exit_code::kCheckFailure;
}

}  // namespace nozzle
