#include "nozzle/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "nozzle/extension.hpp"
#include "nozzle/interpolation.hpp"
#include "nozzle/zfields.hpp"

namespace nozzle {

namespace {

CheckResult make_check(const std::string& name, double measured, double threshold,
                       bool pass, const std::string& detail = "") {
    return {name, measured, threshold, pass, detail};
}

// measured below threshold => pass.
CheckResult below(const std::string& name, double measured, double threshold,
                  const std::string& detail = "") {
    return make_check(name, measured, threshold, measured < threshold, detail);
}

// measured above threshold => pass.
CheckResult above(const std::string& name, double measured, double threshold,
                  const std::string& detail = "") {
    return make_check(name, measured, threshold, measured > threshold, detail);
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

MarchOptions options_from(const ExperimentConfig& cfg, int extra_refine = 0) {
    MarchOptions o;
    o.n_phi = ((cfg.n_phi - 1) << (cfg.refine + extra_refine)) + 1;
    o.cfl = cfg.cfl;
    o.store_targets = cfg.store_targets;
    o.store_every = cfg.store_every;
    return o;
}

}  // namespace

std::vector<CheckResult> verify_background_checks(const ExperimentConfig& cfg) {
    std::vector<CheckResult> out;
    const GasParams p = cfg.gas();
    const auto t0 = std::chrono::steady_clock::now();
    const auto radii = log_spaced_radii(1e6, 200);
    const auto table = background_table(radii, p);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // Mass identity.
    double worst = 0.0;
    for (const auto& s : table)
        worst = std::max(worst, std::abs(s.r * s.r * s.rho_hat * s.U_hat - p.rho0 * p.q0) /
                                    (p.rho0 * p.q0));
    out.push_back(below("background.conservation_rel", worst, thresholds::kConservationRel));
    out.push_back(below("background.table_runtime_s", seconds, 1.0));

    // Monotonicity and signs.
    bool mono = true;
    for (std::size_t i = 1; i < table.size(); ++i) {
        mono = mono && table[i].U_hat > table[i - 1].U_hat &&
               table[i].rho_hat < table[i - 1].rho_hat &&
               table[i].supersonic_margin() > table[i - 1].supersonic_margin();
    }
    bool signs = true;
    for (const auto& s : table)
        signs = signs && s.dU_dr > 0.0 && s.drho_dr < 0.0 && s.P1 > 0.0 && s.dP1_dr < 0.0 &&
                s.P2 > 0.0;
    out.push_back(make_check("background.monotonic", mono ? 1.0 : 0.0, 1.0, mono,
                             "U up, rho down, margin up"));
    out.push_back(make_check("background.signs", signs ? 1.0 : 0.0, 1.0, signs,
                             "U'>0, rho'<0, P1>0, P1'<0, P2>0"));

    // Power-law slopes on [1e2, 1e4].
    std::vector<double> rho_series, c2_series;
    for (const auto& s : table) {
        rho_series.push_back(s.rho_hat);
        c2_series.push_back(s.c2);
    }
    const auto rho_fit = decay_fit(radii, rho_series, 1e2, 1e4, "rho");
    const auto c2_fit = decay_fit(radii, c2_series, 1e2, 1e4, "c2");
    out.push_back(below("background.rho_slope_err", std::abs(rho_fit.slope + 2.0),
                        thresholds::kSlopeTol));
    out.push_back(below("background.c2_slope_err",
                        std::abs(c2_fit.slope - 2.0 * (1.0 - p.gamma)),
                        thresholds::kSlopeTol));

    // Far-field speed.
    const auto far = solve_background(1e6, p);
    out.push_back(below("background.far_speed_err", std::abs(far.U_hat - std::sqrt(2.0)),
                        thresholds::kFarSpeedFactor *
                            std::pow(1e6, 2.0 * (1.0 - p.gamma))));

    // P2 limit product bounded on [1e2, 1e6].
    double p2cap = 0.0;
    for (const auto& s : table)
        if (s.r >= 1e2)
            p2cap = std::max(p2cap, std::abs(s.P2 - 2.0 * (p.gamma - 1.0)) *
                                        std::pow(s.r, 2.0 * (p.gamma - 1.0)));
    out.push_back(below("background.P2_limit_product", p2cap,
                        thresholds::kP2LimitCapFactor * (2.0 * p.gamma - 1.0) *
                            sound_speed_sq(p.rho0, p)));

    // Closed-form coefficient derivatives against central differences.
    double fd_err = 0.0;
    for (double r : {1.5, 3.0, 10.0, 100.0, 1000.0}) {
        const double h = 1e-4 * r;
        const auto st = solve_background(r, p);
        auto P1_of = [&](double rr) { return solve_background(rr, p).P1; };
        auto P2_of = [&](double rr) { return solve_background(rr, p).P2; };
        const double fd1 = central_diff(P1_of, r, h);
        const double fd2 = central_diff(P2_of, r, h);
        fd_err = std::max(fd_err, std::abs(st.dP1_dr - fd1) / std::abs(fd1));
        fd_err = std::max(fd_err, std::abs(st.dP2_dr - fd2) / std::abs(fd2));
    }
    out.push_back(below("background.coeff_fd_rel", fd_err, thresholds::kCoefficientFdRel));
    return out;
}

std::vector<CheckResult> verify_certificate_checks(const ExperimentConfig& cfg) {
    std::vector<CheckResult> out;
    const auto radii = log_spaced_radii(1e6, 200);
    for (double gamma : {1.2, 1.4, 1.6, 1.8}) {
        const GasParams p = make_gas_params(gamma, cfg.q0, cfg.phi0_rad);
        const auto table = background_table(radii, p);
        const auto rep = positivity_certificates(table, p);
        const std::string tag = "certificates.gamma_" + std::to_string(gamma).substr(0, 3);
        // Strict form of the radial bound: margin above delta/2 after scaling.
        out.push_back(above(tag + ".radial", rep.min_radial_normalized, 0.5 * p.delta));
        out.push_back(above(tag + ".angular", rep.min_angular_normalized, 0.0));
        // Injected ceiling violation must be detected.
        const auto bad = positivity_certificates(table, p, p.mu + 0.5);
        out.push_back(make_check(tag + ".tamper_detected", bad.pass ? 1.0 : 0.0, 0.0,
                                 !bad.pass,
                                 "mu above the ceiling must fail the certificate"));
    }
    if (cfg.mu_override != 0.0) {
        const GasParams p = cfg.gas();
        const auto table = background_table(radii, p);
        const auto rep = positivity_certificates(table, p, cfg.mu_override);
        out.push_back(make_check("certificates.mu_override", rep.pass ? 1.0 : 0.0, 1.0,
                                 rep.pass, "user-injected mu"));
    }
    return out;
}

std::vector<CheckResult> verify_unperturbed_convergence(const ExperimentConfig& cfg) {
    std::vector<CheckResult> out;
    const GasParams p = cfg.gas();
    const BumpProfile f0 = cfg.profile_Phi0();
    const BumpProfile f1 = cfg.profile_Phi1();

    // Error against the exact radial solution at three angular resolutions;
    // the step size follows the grid through the characteristic bound.
    std::vector<double> errors;
    double runtime_finest = 0.0;
    for (int level = 0; level < 3; ++level) {
        MarchOptions o = options_from(cfg);
        o.n_phi = ((33 - 1) << level) + 1;
        const auto t0 = std::chrono::steady_clock::now();
        const auto trace = march(f0, f1, 0.0, cfg.r_max, p, o);
        runtime_finest =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!trace.completed()) {
            out.push_back(make_check("march0.completed", 0.0, 1.0, false,
                                     trace.aborted->reason));
            return out;
        }
        double err = 0.0;
        const BackgroundState* hint = nullptr;
        BackgroundState bg;
        for (const auto& s : trace.slices) {
            bg = solve_background(s.r, p, hint);
            hint = &bg;
            for (double v : s.V) err = std::max(err, std::abs(v - bg.U_hat));
        }
        errors.push_back(err);
    }
    const double order1 = std::log2(errors[0] / errors[1]);
    const double order2 = std::log2(errors[1] / errors[2]);
    out.push_back(above("march0.order_coarse", order1, thresholds::kConvergenceOrder));
    out.push_back(above("march0.order_fine", order2, thresholds::kConvergenceOrder));
    out.push_back(below("march0.finest_error", errors.back(), 1e-6));
    out.push_back(below("march0.runtime_s", runtime_finest, 30.0));
    return out;
}

std::vector<CheckResult> verify_perturbed_march(const ExperimentConfig& cfg) {
    std::vector<CheckResult> out;
    const GasParams p = cfg.gas();
    const BumpProfile f0 = cfg.profile_Phi0();
    const BumpProfile f1 = cfg.profile_Phi1();
    const double eps = 1e-3;

    const auto run = [&](int extra_refine) {
        return march(f0, f1, eps, cfg.r_max, p, options_from(cfg, extra_refine));
    };

    const auto trace = run(0);
    out.push_back(make_check("march.completed", trace.completed() ? 1.0 : 0.0, 1.0,
                             trace.completed(),
                             trace.completed() ? "" : trace.aborted->reason));
    if (!trace.completed()) return out;

    double min_hyp = std::numeric_limits<double>::infinity();
    double min_cav = std::numeric_limits<double>::infinity();
    for (const auto& g : trace.guard_log) {
        min_hyp = std::min(min_hyp, g.min_hyperbolicity);
        min_cav = std::min(min_cav, g.min_cavitation);
    }
    out.push_back(above("march.min_hyperbolicity", min_hyp, 0.0));
    out.push_back(above("march.min_cavitation", min_cav, 0.0));

    // Mass conservation across stored radii.
    auto drift_of = [&](const MarchTrace& tr) {
        const double f_in = mass_flux(tr.slices.front(), p);
        double drift = 0.0;
        for (const auto& s : tr.slices)
            drift = std::max(drift, std::abs(mass_flux(s, p) / f_in - 1.0));
        return drift;
    };
    out.push_back(below("march.flux_drift_default", drift_of(trace),
                        cfg.conservation_threshold()));
    ExperimentConfig refined_cfg = cfg;
    refined_cfg.refine += 1;
    const auto refined = run(1);
    if (refined.completed()) {
        out.push_back(below("march.flux_drift_refined", drift_of(refined),
                            refined_cfg.conservation_threshold()));
    } else {
        out.push_back(make_check("march.flux_drift_refined", 0.0, 1.0, false,
                                 refined.aborted->reason));
    }

    // Pointwise decay of the perturbation.
    const auto series = decay_series(trace);
    const auto fit_dr =
        decay_fit(series.r, series.sup_dr, cfg.decay_r_lo, cfg.decay_r_hi, "sup|d_r u|");
    out.push_back(below("decay.radial_slope_err",
                        std::abs(fit_dr.slope + 2.0 * (p.gamma - 1.0)),
                        thresholds::kDecaySlopeTol));
    const auto fit_z =
        decay_fit(series.r, series.sup_Z_r, cfg.decay_r_lo, cfg.decay_r_hi, "sup|Zu|/r");
    out.push_back(below("decay.angular_slope", fit_z.slope,
                        -p.sigma + thresholds::kDecaySlopeTol));
    double z_cap = 0.0;
    for (std::size_t i = 0; i < series.r.size(); ++i)
        if (series.r[i] >= cfg.decay_r_lo)
            z_cap = std::max(z_cap,
                             series.sup_Z_r[i] * std::pow(series.r[i], p.sigma) / eps);
    out.push_back(below("decay.angular_magnitude", z_cap, thresholds::kAngularDecayCap));

    // Squared sound speed against the background band.
    double band_lo = std::numeric_limits<double>::infinity(), band_hi = 0.0;
    {
        const BackgroundState* hint = nullptr;
        BackgroundState bg;
        for (double r : series.r) {
            bg = solve_background(r, p, hint);
            hint = &bg;
            const double prod = bg.c2 * std::pow(r, 2.0 * (p.gamma - 1.0));
            band_lo = std::min(band_lo, prod);
            band_hi = std::max(band_hi, prod);
        }
    }
    double worst_lo = std::numeric_limits<double>::infinity(), worst_hi = 0.0;
    for (std::size_t i = 0; i < series.r.size(); ++i) {
        const double w = std::pow(series.r[i], 2.0 * (p.gamma - 1.0));
        worst_lo = std::min(worst_lo, series.c2_min[i] * w);
        worst_hi = std::max(worst_hi, series.c2_max[i] * w);
    }
    out.push_back(above("march.c2_band_low", worst_lo, thresholds::kC2BandLow * band_lo));
    out.push_back(below("march.c2_band_high", worst_hi, thresholds::kC2BandHigh * band_hi));
    return out;
}

std::vector<CheckResult> verify_energy_scaling(const ExperimentConfig& cfg) {
    std::vector<CheckResult> out;
    const GasParams p = cfg.gas();
    const BumpProfile f0 = cfg.profile_Phi0();
    const BumpProfile f1 = cfg.profile_Phi1();
    const std::vector<double> eps_set{5e-4, 1e-3, 2e-3};

    std::vector<double> T_values;
    for (double T : log_spaced_radii(cfg.r_max, cfg.store_targets))
        if (T >= cfg.decay_r_lo && T <= cfg.decay_r_hi) T_values.push_back(T);

    // max over T of each term, per eps and per k, divided by eps^2.
    auto run_maxima = [&](double eps, int extra_refine) {
        const auto trace =
            march(f0, f1, eps, cfg.r_max, p, options_from(cfg, extra_refine));
        if (!trace.completed())
            throw NoConvergence("energy scaling march aborted: " + trace.aborted->reason);
        std::vector<std::array<double, 4>> maxima;  // per k
        for (int k : cfg.energy_k) {
            const auto rep = weighted_energy(trace, k, eps, T_values);
            std::array<double, 4> m{0.0, 0.0, 0.0, 0.0};
            for (std::size_t i = 0; i < rep.T_values.size(); ++i) {
                m[0] = std::max(m[0], rep.surface_dr[i]);
                m[1] = std::max(m[1], rep.surface_Z[i]);
                m[2] = std::max(m[2], rep.volume_dr[i]);
                m[3] = std::max(m[3], rep.volume_Z[i]);
            }
            for (auto& v : m) v /= eps * eps;
            maxima.push_back(m);
        }
        return maxima;
    };

    std::vector<std::vector<std::array<double, 4>>> per_eps;
    for (double eps : eps_set) per_eps.push_back(run_maxima(eps, 0));

    const char* term_names[4] = {"surface_dr", "surface_Z", "volume_dr", "volume_Z"};
    for (std::size_t ki = 0; ki < cfg.energy_k.size(); ++ki) {
        for (int t = 0; t < 4; ++t) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& m : per_eps) {
                lo = std::min(lo, m[ki][t]);
                hi = std::max(hi, m[ki][t]);
            }
            const std::string name = "energy.k" + std::to_string(cfg.energy_k[ki]) + "." +
                                     term_names[t] + ".spread";
            const bool finite = std::isfinite(hi) && hi > 0.0;
            out.push_back(make_check(name, hi / lo - 1.0, thresholds::kEnergySpread,
                                     finite && (hi / lo - 1.0) < thresholds::kEnergySpread,
                                     "max/min of (term/eps^2) across eps"));
        }
    }

    // Refinement stability at eps = 1e-3.
    const auto fine = run_maxima(1e-3, 1);
    for (std::size_t ki = 0; ki < cfg.energy_k.size(); ++ki)
        for (int t = 0; t < 4; ++t) {
            const double a = per_eps[1][ki][t], b = fine[ki][t];
            const std::string name = "energy.k" + std::to_string(cfg.energy_k[ki]) + "." +
                                     term_names[t] + ".refinement";
            out.push_back(below(name, std::abs(b / a - 1.0), thresholds::kEnergySpread));
        }
    return out;
}

std::vector<CheckResult> verify_toolkit(const ExperimentConfig& cfg) {
    std::vector<CheckResult> out;
    const GasParams p = cfg.gas();

    // Rotation-field identities on randomized polynomial probes.
    const auto probe = z_field_probe(100, cfg.seed);
    out.push_back(below("zfields.dot_identity", probe.max_identity_residual,
                        thresholds::kZResidual));
    out.push_back(below("zfields.commutators", probe.max_commutator_residual,
                        thresholds::kZResidual));
    out.push_back(below("zfields.radial_commutator", probe.max_radial_commutator,
                        thresholds::kZResidual));
    out.push_back(below("zfields.radius_annihilated", probe.max_radius_residual,
                        thresholds::kZResidual));
    out.push_back(below("zfields.tangential_bound", probe.max_tangential_gap, 1e-12));
    out.push_back(below("zfields.gradient_reconstruction",
                        probe.max_reconstruction_residual, thresholds::kZResidual));

    // Reflection-extension weights.
    const auto coeffs = extension_coefficients();
    const double expected[4] = {10.0, -20.0, 15.0, -4.0};
    double coeff_err = 0.0, moment_err = 0.0;
    for (int j = 0; j < 4; ++j) {
        coeff_err = std::max(coeff_err, std::abs(coeffs.lambda[j] - expected[j]));
        moment_err = std::max(moment_err, std::abs(coeffs.moment_residual(j)));
    }
    out.push_back(below("extension.coefficients", coeff_err, 1e-10));
    out.push_back(below("extension.moments", moment_err, thresholds::kMomentResidual));

    // C^3 reproduction of a cubic across the matching radius.
    {
        const double T = 4.0;
        auto cubic = [&](double r) {
            const double s = r - T;
            return ((s + 0.25) * s - 0.5) * s + 0.125;
        };
        auto ext = [&](double r) { return extend_closed_form(cubic, T, r); };
        double jump = 0.0;
        const double h = 1e-3;
        for (int order = 1; order <= 3; ++order) {
            // One-sided 5-point stencils on each side of r = T.
            std::vector<double> nodes(5);
            double left = 0.0, right = 0.0;
            for (int i = 0; i < 5; ++i) nodes[i] = -4.0 * h + i * h;
            auto w = fd_weights(0.0, nodes, order);
            for (int i = 0; i < 5; ++i)
                left += w[order * 5 + i] * ext(T + nodes[i]);
            for (int i = 0; i < 5; ++i) nodes[i] = i * h;
            w = fd_weights(0.0, nodes, order);
            for (int i = 0; i < 5; ++i)
                right += w[order * 5 + i] * ext(T + nodes[i]);
            jump = std::max(jump, std::abs(left - right));
        }
        out.push_back(below("extension.cubic_jumps", jump, thresholds::kCubicJump));
    }

    // Weighted sup-norm control, uniform over the matching radius.
    {
        const double beta = 1.3;
        auto measure = [&](const std::function<double(double)>& u, double T) {
            double sup_u = 0.0, sup_e = 0.0;
            const int N = 4000;
            for (int i = 0; i <= N; ++i) {
                const double r = 1.0 + (9.0 / 8.0 * T - 1.0) * i / N;
                const double w = std::pow(r, beta);
                if (r <= T) sup_u = std::max(sup_u, w * std::abs(u(r)));
                sup_e = std::max(sup_e, w * std::abs(extend_closed_form(u, T, r)));
            }
            return sup_e / sup_u;
        };
        auto wavy = [](double r) { return std::pow(r, -0.7) * (1.5 + std::cos(2.0 * r)); };
        auto power = [](double r) { return std::pow(r, -0.7); };
        double worst = 0.0, spread_lo = std::numeric_limits<double>::infinity(),
               spread_hi = 0.0;
        for (double T : {2.0, 4.0, 8.0, 16.0}) {
            worst = std::max(worst, measure(wavy, T));
            // A pure power law scales with the reflection geometry, so its
            // ratio exposes any T-dependence directly.
            const double ratio = measure(power, T);
            spread_lo = std::min(spread_lo, ratio);
            spread_hi = std::max(spread_hi, ratio);
        }
        // Provable cap: sum |lambda_j| * (9/4)^beta.
        const double cap = 50.0 * std::pow(2.25, beta);
        out.push_back(below("extension.weighted_ratio", worst, cap));
        out.push_back(below("extension.ratio_spread", spread_hi / spread_lo,
                            thresholds::kExtensionSpread));
    }

    // Interpolation-inequality admissibility: the four canonical sets pass,
    // perturbed variants fail.
    {
        bool all_ok = true;
        for (double gamma : {1.2, 1.4, 1.6, 1.8}) {
            const double sigma = default_sigma(gamma);
            const double delta = default_delta(gamma);
            for (int which = 1; which <= 4; ++which)
                all_ok = all_ok && weighted_interpolation_admissible(
                                       canonical_exponent_set(which, gamma, sigma, delta));
        }
        out.push_back(make_check("interpolation.canonical_admissible", all_ok ? 1.0 : 0.0,
                                 1.0, all_ok));

        auto bad1 = canonical_exponent_set(1, p.gamma, p.sigma, p.delta);
        bad1.tau += 0.1;  // a = j/m forces the weight equality
        auto bad2 = canonical_exponent_set(2, p.gamma, p.sigma, p.delta);
        bad2.alpha += 0.2;  // breaks the dimensional balance
        InterpolationExponents bad3;  // borderline ordering violation
        bad3.s = 2.3076923076923075;
        bad3.tau = 1.2;
        bad3.p = 2.0;
        bad3.alpha = 2.0;
        bad3.beta = 1.5;
        bad3.q = std::numeric_limits<double>::infinity();
        bad3.a = 0.75;
        bad3.j = 1;
        bad3.m = 2;
        bad3.n = 3;
        const bool rejects = !weighted_interpolation_admissible(bad1) &&
                             !weighted_interpolation_admissible(bad2) &&
                             !weighted_interpolation_admissible(bad3);
        out.push_back(
            make_check("interpolation.rejections", rejects ? 1.0 : 0.0, 1.0, rejects));
    }

    // Ratio stability of the four weighted inequalities under refinement.
    for (int which : cfg.ineq_families) {
        const auto sweep =
            inequality_family_sweep(which, cfg.ineq_members, cfg.ineq_levels, p.gamma,
                                    p.sigma, p.delta, p.phi0, cfg.seed);
        std::vector<double> sup_per_level(cfg.ineq_levels, 0.0);
        bool finite = true;
        for (const auto& s : sweep) {
            finite = finite && std::isfinite(s.ratio) && s.ratio > 0.0;
            sup_per_level[s.grid_level] = std::max(sup_per_level[s.grid_level], s.ratio);
        }
        double drift = 0.0;
        for (int l = 1; l < cfg.ineq_levels; ++l)
            drift = std::max(drift, std::abs(sup_per_level[l] / sup_per_level[l - 1] - 1.0));
        const std::string name = "interpolation.family" + std::to_string(which);
        out.push_back(make_check(name + ".finite", finite ? 1.0 : 0.0, 1.0, finite));
        out.push_back(below(name + ".drift", drift, thresholds::kRatioDrift));
    }
    return out;
}

std::vector<CheckResult> verify_all(const ExperimentConfig& cfg) {
    std::vector<CheckResult> all;
    for (auto group : {verify_background_checks, verify_certificate_checks,
                       verify_unperturbed_convergence, verify_perturbed_march,
                       verify_energy_scaling, verify_toolkit}) {
        const auto results = group(cfg);
        all.insert(all.end(), results.begin(), results.end());
    }
    return all;
}

}  // namespace nozzle
