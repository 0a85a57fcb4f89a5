#include "nozzle/march.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nozzle {

namespace {

const AngularDerivative& ops_for(const FlowSlice& slice, const GasParams& p) {
    thread_local std::unique_ptr<AngularDerivative> cached;
    thread_local int cached_n = -1;
    thread_local double cached_h = 0.0;
    thread_local double cached_ratio = 0.0;
    const double ratio = wall_third_ratio(p);
    if (cached_n != slice.n() || cached_h != slice.grid.spacing || cached_ratio != ratio) {
        cached = std::make_unique<AngularDerivative>(slice.n(), slice.grid.spacing, ratio);
        cached_n = slice.n();
        cached_h = slice.grid.spacing;
        cached_ratio = ratio;
    }
    return *cached;
}

}  // namespace

SliceFields slice_fields(const FlowSlice& slice, const GasParams& p,
                         const AngularDerivative& ops) {
    const int n = slice.n();
    SliceFields f;
    f.dPhi_dphi = ops.d1(slice.Phi);
    f.d2Phi_dphi2 = ops.d2(slice.Phi);
    f.dV_dphi = ops.d1(slice.V);
    // Axis regularity and the wall condition: the tangential derivative
    // vanishes at both ends, and so does its radial derivative.
    f.dPhi_dphi.front() = 0.0;
    f.dPhi_dphi.back() = 0.0;
    f.dV_dphi.front() = 0.0;
    f.dV_dphi.back() = 0.0;

    f.speed_sq.resize(n);
    f.c2.resize(n);
    f.rho.resize(n);
    f.min_hyperbolicity = std::numeric_limits<double>::infinity();
    f.min_cavitation = std::numeric_limits<double>::infinity();
    const double inv_r2 = 1.0 / (slice.r * slice.r);
    for (int i = 0; i < n; ++i) {
        const double up = f.dPhi_dphi[i];
        const double s2 = slice.V[i] * slice.V[i] + inv_r2 * up * up;
        f.speed_sq[i] = s2;
        const double head = p.C0 - 0.5 * s2;
        f.min_cavitation = std::min(f.min_cavitation, head);
        const double c2 = (p.gamma - 1.0) * head;
        f.c2[i] = c2;
        f.min_hyperbolicity = std::min(f.min_hyperbolicity, slice.V[i] * slice.V[i] - c2);
        f.rho[i] = head > 0.0 ? std::pow((p.gamma - 1.0) / p.gamma * head,
                                         1.0 / (p.gamma - 1.0))
                              : 0.0;
    }
    return f;
}

std::vector<double> rhs_second_radial(const FlowSlice& slice, const GasParams& p) {
    const auto& ops = ops_for(slice, p);
    const auto f = slice_fields(slice, p, ops);
    const GuardFloors floors;
    if (f.min_cavitation <= floors.cavitation)
        throw CavitationError("density guard tripped at r = " + std::to_string(slice.r));
    if (f.min_hyperbolicity <= floors.hyperbolicity)
        throw HyperbolicityLoss("supersonic guard tripped at r = " +
                                std::to_string(slice.r));

    const int n = slice.n();
    const double r = slice.r;
    const double inv_r2 = 1.0 / (r * r);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double V = slice.V[i];
        const double up = f.dPhi_dphi[i];
        const double upp = f.d2Phi_dphi2[i];
        const double vp = f.dV_dphi[i];
        const double c2 = f.c2[i];
        const double A = V * V - c2;
        const double angular_coeff = inv_r2 * (inv_r2 * up * up - c2);
        const double cross = 2.0 * inv_r2 * V * up;
        const double lower = (2.0 * r * r * c2 + up * up) * V / (r * r * r);
        double axis_term;
        if (i == 0) {
            // cot(phi) * d_phi -> d_phi^2 as phi -> 0 (regular limit).
            axis_term = c2 * inv_r2 * upp;
        } else {
            axis_term = c2 * inv_r2 * up / std::tan(slice.grid.nodes[i]);
        }
        out[i] = (lower + axis_term - angular_coeff * upp - cross * vp) / A;
    }
    return out;
}

FlowSlice step(const FlowSlice& slice, double dr, const GasParams& p,
               const GuardFloors& floors) {
    const int n = slice.n();
    auto advance = [&](const FlowSlice& base, const std::vector<double>& kPhi,
                       const std::vector<double>& kV, double frac) {
        FlowSlice out;
        out.r = slice.r + frac * dr;
        out.grid = slice.grid;
        out.Phi.resize(n);
        out.V.resize(n);
        for (int i = 0; i < n; ++i) {
            out.Phi[i] = base.Phi[i] + frac * dr * kPhi[i];
            out.V[i] = base.V[i] + frac * dr * kV[i];
        }
        return out;
    };

    // Classic RK4 on (Phi' = V, V' = rhs).
    const std::vector<double>& k1Phi = slice.V;
    std::vector<double> k1V = rhs_second_radial(slice, p);
    FlowSlice s2 = advance(slice, k1Phi, k1V, 0.5);
    const std::vector<double> k2Phi = s2.V;
    std::vector<double> k2V = rhs_second_radial(s2, p);
    FlowSlice s3 = advance(slice, k2Phi, k2V, 0.5);
    const std::vector<double> k3Phi = s3.V;
    std::vector<double> k3V = rhs_second_radial(s3, p);
    FlowSlice s4 = advance(slice, k3Phi, k3V, 1.0);
    const std::vector<double> k4Phi = s4.V;
    std::vector<double> k4V = rhs_second_radial(s4, p);

    FlowSlice out;
    out.r = slice.r + dr;
    out.grid = slice.grid;
    out.Phi.resize(n);
    out.V.resize(n);
    for (int i = 0; i < n; ++i) {
        out.Phi[i] = slice.Phi[i] +
                     dr / 6.0 * (k1Phi[i] + 2.0 * k2Phi[i] + 2.0 * k3Phi[i] + k4Phi[i]);
        out.V[i] =
            slice.V[i] + dr / 6.0 * (k1V[i] + 2.0 * k2V[i] + 2.0 * k3V[i] + k4V[i]);
    }

    const auto f = slice_fields(out, p, ops_for(out, p));
    if (f.min_cavitation <= floors.cavitation || f.min_hyperbolicity <= floors.hyperbolicity)
        throw StepRejected("guards violated after step to r = " + std::to_string(out.r));
    return out;
}

FlowSlice initial_slice(const BumpProfile& Phi0, const BumpProfile& Phi1, double eps,
                        const GasParams& p, int n_phi) {
    FlowSlice s;
    s.r = 1.0;
    s.grid = AngularGrid(p.phi0, n_phi);
    s.Phi.resize(n_phi);
    s.V.resize(n_phi);
    for (int i = 0; i < n_phi; ++i) {
        const double phi = s.grid.nodes[i];
        s.Phi[i] = eps * Phi0(phi);
        s.V[i] = p.q0 + eps * Phi1(phi);
    }
    return s;
}

MarchTrace march(const BumpProfile& Phi0, const BumpProfile& Phi1, double eps,
                 double r_max, const GasParams& p, const MarchOptions& opts) {
    if (r_max <= 1.0) throw ConfigError("march: r_max must exceed 1");
    if (eps < 0.0) throw ConfigError("march: eps must be nonnegative");

    MarchTrace trace;
    trace.params = p;

    std::vector<double> targets = log_spaced_radii(r_max, std::max(2, opts.store_targets));
    targets.insert(targets.end(), opts.extra_targets.begin(), opts.extra_targets.end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  targets.end());

    FlowSlice slice;
    try {
        slice = initial_slice(Phi0, Phi1, eps, p, opts.n_phi);
        const auto f0 = slice_fields(slice, p, slice_ops(slice, p));
        if (f0.min_cavitation <= opts.floors.cavitation)
            throw CavitationError("initial data reach the limit speed");
        if (f0.min_hyperbolicity <= opts.floors.hyperbolicity)
            throw HyperbolicityLoss("initial data are not supersonic");
    } catch (const std::runtime_error& e) {
        trace.aborted = AbortInfo{1.0, e.what()};
        return trace;
    }

    trace.slices.push_back(slice);
    std::size_t next_target = 1;  // targets[0] == 1 is already stored
    const double h = slice.grid.spacing;
    const AngularDerivative ops = slice_ops(slice, p);

    while (slice.r < r_max * (1.0 - 1e-14)) {
        const auto f = slice_fields(slice, p, ops);
        // Angular characteristic bound: |dphi/dr| <= c / (r * sqrt(V^2 - c^2)).
        double dr_bound = std::numeric_limits<double>::infinity();
        for (int i = 0; i < slice.n(); ++i) {
            const double A = slice.V[i] * slice.V[i] - f.c2[i];
            if (A <= 0.0 || f.c2[i] <= 0.0) {
                dr_bound = 0.0;
                break;
            }
            dr_bound = std::min(dr_bound,
                                h * slice.r * std::sqrt(A) / std::sqrt(f.c2[i]));
        }
        double dr = opts.cfl * dr_bound;
        bool at_target = false;
        if (next_target < targets.size()) {
            const double gap = targets[next_target] - slice.r;
            if (dr >= gap - 1e-14 * slice.r) {
                dr = gap;
                at_target = true;
            }
        }
        if (!(dr > 0.0)) {
            trace.aborted = AbortInfo{slice.r, "step bound collapsed"};
            return trace;
        }

        bool stepped = false;
        std::string last_reason;
        for (int attempt = 0; attempt < 40; ++attempt) {
            try {
                FlowSlice next = step(slice, dr, p, opts.floors);
                const auto fn = slice_fields(next, p, ops);
                trace.guard_log.push_back(
                    {slice.r, dr, fn.min_hyperbolicity, fn.min_cavitation});
                slice = std::move(next);
                stepped = true;
                break;
            } catch (const std::runtime_error& e) {
                last_reason = e.what();
                dr *= 0.5;
                at_target = false;
                if (dr < opts.min_step_fraction * slice.r) break;
            }
        }
        if (!stepped) {
            trace.aborted = AbortInfo{slice.r, last_reason.empty() ? "step failed"
                                                                   : last_reason};
            return trace;
        }
        ++trace.steps_taken;

        bool store = false;
        if (at_target ||
            (next_target < targets.size() &&
             slice.r >= targets[next_target] * (1.0 - 1e-13))) {
            store = true;
            while (next_target < targets.size() &&
                   targets[next_target] <= slice.r * (1.0 + 1e-13))
                ++next_target;
        }
        if (opts.store_every > 0 && trace.steps_taken % opts.store_every == 0) store = true;
        if (store) trace.slices.push_back(slice);
    }
    if (trace.slices.back().r < slice.r) trace.slices.push_back(slice);
    return trace;
}

std::vector<PerturbationSlice> perturbation(const MarchTrace& trace) {
    std::vector<PerturbationSlice> out;
    out.reserve(trace.slices.size());
    BackgroundPotential phi_hat(trace.params);
    const BackgroundState* hint = nullptr;
    BackgroundState bg;
    for (const auto& s : trace.slices) {
        bg = solve_background(s.r, trace.params, hint);
        hint = &bg;
        const double base_phi = phi_hat(s.r);
        PerturbationSlice ps;
        ps.r = s.r;
        ps.dot_Phi.resize(s.n());
        ps.d_dot_Phi_dr.resize(s.n());
        for (int i = 0; i < s.n(); ++i) {
            ps.dot_Phi[i] = s.Phi[i] - base_phi;
            ps.d_dot_Phi_dr[i] = s.V[i] - bg.U_hat;
        }
        const AngularDerivative ops = slice_ops(s, trace.params);
        ps.d_dot_Phi_dphi = ops.d1(s.Phi);
        ps.d_dot_Phi_dphi.front() = 0.0;
        ps.d_dot_Phi_dphi.back() = 0.0;
        out.push_back(std::move(ps));
    }
    return out;
}

}  // namespace nozzle
