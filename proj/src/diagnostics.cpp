#include "nozzle/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nozzle/quadrature.hpp"

namespace nozzle {

namespace {

// 2*pi * integral over the cap of f(phi) * r^2 * sin(phi), with f sampled on
// the slice grid and carried to the Gauss nodes by local interpolation.
double cap_integral(const std::vector<double>& f, const AngularGrid& grid, double r) {
    const int n_gl = std::max(96, grid.size());
    const auto& rule = gauss_legendre(n_gl);
    const double a = 0.0, b = grid.phi0();
    double acc = 0.0;
    for (int j = 0; j < n_gl; ++j) {
        const double phi = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j];
        const double val = interp6(f, 0.0, grid.spacing, phi);
        acc += rule.weights[j] * val * std::sin(phi);
    }
    return 2.0 * M_PI * r * r * 0.5 * (b - a) * acc;
}

}  // namespace

double mass_flux(const FlowSlice& slice, const GasParams& p) {
    const AngularDerivative ops = slice_ops(slice, p);
    const auto f = slice_fields(slice, p, ops);
    if (f.min_cavitation <= 0.0)
        throw CavitationError("mass_flux: cavitated node at r = " + std::to_string(slice.r));
    std::vector<double> integrand(slice.n());
    for (int i = 0; i < slice.n(); ++i) integrand[i] = f.rho[i] * slice.V[i];
    return cap_integral(integrand, slice.grid, slice.r);
}

double entrance_mass_flux(const BumpProfile& Phi0, const BumpProfile& Phi1, double eps,
                          const GasParams& p) {
    auto integrand = [&](double phi) {
        return initial_density_profile(phi, eps, Phi0, Phi1, p) *
               (p.q0 + eps * Phi1(phi)) * std::sin(phi);
    };
    return 2.0 * M_PI * gl_integrate_panels(integrand, 0.0, p.phi0, 32, 8);
}

namespace {

// Per-slice perturbation data with the exact second radial derivative
// (from the equation itself, not from differencing stored slices).
struct SliceData {
    double r;
    AngularGrid grid;
    std::vector<double> dotV;       // d_r dot Phi
    std::vector<double> ddotV_dr;   // d_r^2 dot Phi
    std::vector<double> dphi;       // d_phi dot Phi (= d_phi Phi)
    std::vector<double> dphi2;      // d_phi^2 dot Phi
    std::vector<double> dV_dphi;    // d_phi d_r dot Phi
};

SliceData slice_data(const FlowSlice& s, const GasParams& p, const BackgroundState& bg) {
    const AngularDerivative ops = slice_ops(s, p);
    SliceData d;
    d.r = s.r;
    d.grid = s.grid;
    d.dotV.resize(s.n());
    for (int i = 0; i < s.n(); ++i) d.dotV[i] = s.V[i] - bg.U_hat;
    const auto rhs = rhs_second_radial(s, p);
    d.ddotV_dr.resize(s.n());
    for (int i = 0; i < s.n(); ++i) d.ddotV_dr[i] = rhs[i] - bg.dU_dr;
    d.dphi = ops.d1(s.Phi);
    d.dphi.front() = d.dphi.back() = 0.0;
    d.dphi2 = ops.d2(s.Phi);
    d.dV_dphi = ops.d1(s.V);
    d.dV_dphi.front() = d.dV_dphi.back() = 0.0;
    return d;
}

// Pointwise gradient-magnitude realizations for orders 0 and 1.
std::vector<double> field_sq_dr(const SliceData& d, int k) {
    const int n = d.grid.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        if (k == 0) {
            out[i] = d.dotV[i] * d.dotV[i];
        } else {
            const double v = std::abs(d.ddotV_dr[i]) + std::abs(d.dV_dphi[i]) / d.r;
            out[i] = v * v;
        }
    }
    return out;
}

std::vector<double> field_sq_Z(const SliceData& d, int k) {
    const int n = d.grid.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double w = d.dphi[i] / d.r;  // Zu / r
        if (k == 0) {
            out[i] = w * w;
        } else {
            const double dw_dr = d.dV_dphi[i] / d.r - d.dphi[i] / (d.r * d.r);
            const double dw_dphi_over_r = d.dphi2[i] / (d.r * d.r);
            const double v = std::abs(dw_dr) + std::abs(dw_dphi_over_r);
            out[i] = v * v;
        }
    }
    return out;
}

}  // namespace

EnergyReport weighted_energy(const MarchTrace& trace, int k, double eps,
                             const std::vector<double>& T_values) {
    if (k < 0 || k > 1)
        throw DomainError("weighted_energy: k must be 0 or 1 on stored slices");
    if (trace.slices.size() < 3)
        throw InsufficientSlices("weighted_energy: need at least 3 stored slices");
    const GasParams& p = trace.params;
    const double mu = p.mu, g = p.gamma, delta = p.delta;

    std::vector<SliceData> data;
    data.reserve(trace.slices.size());
    {
        const BackgroundState* hint = nullptr;
        BackgroundState bg;
        for (const auto& s : trace.slices) {
            bg = solve_background(s.r, p, hint);
            hint = &bg;
            data.push_back(slice_data(s, p, bg));
        }
    }

    // Angular integrals per stored radius, then cumulative trapezoid in r.
    const std::size_t m = data.size();
    std::vector<double> surf_dr(m), surf_Z(m), vol_dr_cum(m, 0.0), vol_Z_cum(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        surf_dr[i] = cap_integral(field_sq_dr(data[i], k), data[i].grid, data[i].r);
        surf_Z[i] = cap_integral(field_sq_Z(data[i], k), data[i].grid, data[i].r);
    }
    for (std::size_t i = 1; i < m; ++i) {
        const double r0 = data[i - 1].r, r1 = data[i].r;
        const double w_dr0 = std::pow(r0, mu - 1.0 - delta + 2 * k);
        const double w_dr1 = std::pow(r1, mu - 1.0 - delta + 2 * k);
        const double w_Z0 = std::pow(r0, mu + 1.0 - 2.0 * g + 2 * k);
        const double w_Z1 = std::pow(r1, mu + 1.0 - 2.0 * g + 2 * k);
        vol_dr_cum[i] = vol_dr_cum[i - 1] +
                        0.5 * (r1 - r0) * (w_dr0 * surf_dr[i - 1] + w_dr1 * surf_dr[i]);
        vol_Z_cum[i] =
            vol_Z_cum[i - 1] + 0.5 * (r1 - r0) * (w_Z0 * surf_Z[i - 1] + w_Z1 * surf_Z[i]);
    }

    EnergyReport rep;
    rep.k = k;
    rep.eps = eps;
    for (double T : T_values) {
        // Nearest stored radius (targets are forced onto the step sequence).
        std::size_t best = 0;
        for (std::size_t i = 1; i < m; ++i)
            if (std::abs(data[i].r - T) < std::abs(data[best].r - T)) best = i;
        if (std::abs(data[best].r - T) > 1e-6 * T)
            throw InsufficientSlices("weighted_energy: no stored slice near T = " +
                                     std::to_string(T));
        const double Tr = data[best].r;
        rep.T_values.push_back(Tr);
        rep.surface_dr.push_back(std::pow(Tr, mu + 2 * k) * surf_dr[best]);
        rep.surface_Z.push_back(std::pow(Tr, mu - 2.0 * g + 2 * k) * surf_Z[best]);
        rep.volume_dr.push_back(vol_dr_cum[best]);
        rep.volume_Z.push_back(vol_Z_cum[best]);
    }
    return rep;
}

MultiplierWeight multiplier_weight(double r, const GasParams& p) {
    if (r < 1.0) throw DomainError("multiplier_weight: r must be >= 1");
    MultiplierWeight w;
    w.a = 1.0 + std::pow(r, -p.delta);
    w.a_prime = -p.delta * std::pow(r, -p.delta - 1.0);
    w.weight = std::pow(r, p.mu) * w.a;
    return w;
}

CertificateReport positivity_certificates(const std::vector<BackgroundState>& table,
                                          const GasParams& p,
                                          std::optional<double> mu_override) {
    if (table.empty()) throw DomainError("positivity_certificates: empty table");
    CertificateReport rep;
    const double mu = mu_override.value_or(p.mu);
    rep.mu_used = mu;
    rep.min_radial_normalized = std::numeric_limits<double>::infinity();
    rep.min_angular_normalized = std::numeric_limits<double>::infinity();
    for (const auto& s : table) {
        const auto w = multiplier_weight(s.r, p);
        // Radial coefficient: (P2 - (mu+2)/2) a - r a'/2, scaled by r^delta.
        const double radial =
            ((s.P2 - 0.5 * (mu + 2.0)) * w.a - 0.5 * s.r * w.a_prime) *
            std::pow(s.r, p.delta);
        // Angular coefficient: -(mu P1 + r P1') a - r a' P1, scaled by r^(2(g-1)).
        const double angular =
            (-(mu * s.P1 + s.r * s.dP1_dr) * w.a - s.r * w.a_prime * s.P1) *
            std::pow(s.r, 2.0 * (p.gamma - 1.0));
        if (radial < rep.min_radial_normalized) {
            rep.min_radial_normalized = radial;
            rep.argmin_radial = s.r;
        }
        if (angular < rep.min_angular_normalized) {
            rep.min_angular_normalized = angular;
            rep.argmin_angular = s.r;
        }
    }
    rep.pass = rep.min_radial_normalized > 0.0 && rep.min_angular_normalized > 0.0 &&
               p.delta > 0.0;
    return rep;
}

DecayFit decay_fit(const std::vector<double>& r, const std::vector<double>& y,
                   double r_lo, double r_hi, const std::string& quantity) {
    if (r.size() != y.size()) throw DomainError("decay_fit: size mismatch");
    DecayFit fit;
    fit.quantity = quantity;
    fit.r_lo = r_lo;
    fit.r_hi = r_hi;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < r_lo || r[i] > r_hi) continue;
        if (!(y[i] > 0.0))
            throw DomainError("decay_fit: nonpositive sample inside the window");
        pts.emplace_back(std::log(r[i]), std::log(y[i]));
    }
    fit.points = static_cast<int>(pts.size());
    if (fit.points < 8) throw DomainError("decay_fit: need at least 8 points in window");
    for (auto [x, v] : pts) {
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    const double n = fit.points;
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double ss = 0.0;
    for (auto [x, v] : pts) {
        const double e = v - (fit.slope * x + fit.intercept);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

DecaySeries decay_series(const MarchTrace& trace) {
    DecaySeries out;
    const auto perts = perturbation(trace);
    const GasParams& p = trace.params;
    for (std::size_t i = 0; i < trace.slices.size(); ++i) {
        const auto& s = trace.slices[i];
        const auto& ps = perts[i];
        const AngularDerivative ops = slice_ops(s, p);
        const auto f = slice_fields(s, p, ops);
        double sup_dr = 0.0, sup_Z = 0.0;
        double c2_min = std::numeric_limits<double>::infinity(), c2_max = 0.0;
        for (int j = 0; j < s.n(); ++j) {
            sup_dr = std::max(sup_dr, std::abs(ps.d_dot_Phi_dr[j]));
            sup_Z = std::max(sup_Z, std::abs(ps.d_dot_Phi_dphi[j]) / s.r);
            c2_min = std::min(c2_min, f.c2[j]);
            c2_max = std::max(c2_max, f.c2[j]);
        }
        out.r.push_back(s.r);
        out.sup_dr.push_back(sup_dr);
        out.sup_Z_r.push_back(sup_Z);
        out.c2_min.push_back(c2_min);
        out.c2_max.push_back(c2_max);
    }
    return out;
}

}  // namespace nozzle
