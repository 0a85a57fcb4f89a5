#include "nozzle/background.hpp"

#include <algorithm>
#include <cmath>

#include "nozzle/quadrature.hpp"

namespace nozzle {

GasParams make_gas_params(double gamma, double q0, double phi0, double delta) {
    if (!(gamma > 1.0 && gamma < 2.0))
        throw ConfigError("gamma must lie in (1, 2), got " + std::to_string(gamma));
    if (!(phi0 > 0.0 && phi0 < M_PI / 2.0))
        throw ConfigError("phi0 must lie in (0, pi/2), got " + std::to_string(phi0));
    GasParams p;
    p.gamma = gamma;
    p.q0 = q0;
    p.phi0 = phi0;
    p.C0 = 1.0;
    if (!(q0 > 0.0) || q0 * q0 >= p.limit_speed_sq())
        throw ConfigError("q0 must lie in (0, sqrt(2*C0))");
    p.rho0 = density_from_speed_sq(q0 * q0, p);
    if (q0 * q0 <= sound_speed_sq(p.rho0, p))
        throw ConfigError("entrance state is not supersonic: q0 <= c(rho0)");
    p.mu = 4.0 * gamma - 6.0;
    p.sigma = default_sigma(gamma);
    p.delta = (delta > 0.0) ? delta : default_delta(gamma);
    const double ceiling = std::min(gamma - 1.0, p.sigma - (gamma - 1.0));
    if (p.delta > ceiling + 1e-15)
        throw ConfigError("delta exceeds min(gamma-1, sigma-(gamma-1))");
    return p;
}

GasParams make_gas_params_with_rho0(double gamma, double q0, double rho0, double phi0,
                                    double delta) {
    GasParams p = make_gas_params(gamma, q0, phi0, delta);
    if (std::abs(rho0 - p.rho0) > 1e-12 * std::max(1.0, p.rho0))
        throw ConfigError("(q0, rho0) violate Bernoulli with C0 = 1");
    p.rho0 = rho0;
    return p;
}

namespace {

// Residual pair: f1 = mass conservation, f2 = Bernoulli.
struct Residuals {
    double f1, f2;
};

Residuals residuals(double rho, double U, double r, const GasParams& p) {
    return {r * r * rho * U - p.rho0 * p.q0,
            0.5 * U * U + p.gamma / (p.gamma - 1.0) * std::pow(rho, p.gamma - 1.0) - p.C0};
}

// Speed-only equation after eliminating rho through mass conservation.
// Strictly increasing in U on the supersonic branch.
double speed_equation(double U, double r, const GasParams& p) {
    const double rho = p.rho0 * p.q0 / (r * r * U);
    return 0.5 * U * U + p.gamma / (p.gamma - 1.0) * std::pow(rho, p.gamma - 1.0) - p.C0;
}

BackgroundState from_speed(double U, double r, const GasParams& p) {
    BackgroundState s;
    s.r = r;
    s.U_hat = U;
    s.rho_hat = p.rho0 * p.q0 / (r * r * U);
    s.c2 = sound_speed_sq(s.rho_hat, p);
    return s;
}

void fill_derived(BackgroundState& s, const GasParams& p) {
    auto [drho, dU] = background_derivatives(s, p);
    s.drho_dr = drho;
    s.dU_dr = dU;
    const auto lin = linearization_coefficients(s, p);
    s.P1 = lin.P1;
    s.P2 = lin.P2;
    s.dP1_dr = lin.dP1_dr;
    s.dP2_dr = lin.dP2_dr;
}

}  // namespace

BackgroundState solve_background(double r, const GasParams& p, const BackgroundState* hint) {
    if (r < 1.0) throw DomainError("solve_background: r must be >= 1");

    const double mass = p.rho0 * p.q0;
    const double Umax = std::sqrt(p.limit_speed_sq());

    BackgroundState s;
    if (r == 1.0) {
        s = from_speed(p.q0, 1.0, p);
        s.rho_hat = p.rho0;  // entrance data, exact
        fill_derived(s, p);
        return s;
    }

    // Newton on (f1, f2) in (rho, U) with the analytic Jacobian.
    double rho, U;
    if (hint && hint->rho_hat > 0.0) {
        rho = hint->rho_hat;
        U = hint->U_hat;
    } else {
        // Vacuum-limit guess; adequate away from the entrance, and Newton is
        // safeguarded below in any case.
        U = std::min(Umax * (1.0 - 1e-12), std::max(p.q0, Umax - (Umax - p.q0) / r));
        rho = mass / (r * r * U);
    }

    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        const auto f = residuals(rho, U, r, p);
        if (std::abs(f.f1) < 1e-13 * mass && std::abs(f.f2) < 1e-13) {
            converged = true;
            break;
        }
        const double c2 = sound_speed_sq(rho, p);
        const double det = r * r * (U * U - c2);
        if (det <= 0.0) break;  // wandered off the supersonic branch
        const double drho = (-U * f.f1 + r * r * rho * f.f2) / det;
        const double dU = (c2 / rho * f.f1 - r * r * U * f.f2) / det;
        rho += drho;
        U += dU;
        if (!(rho > 0.0) || !(U > 0.0) || U >= Umax) break;
    }

    if (converged && U >= p.q0 * (1.0 - 1e-12)) {
        s = from_speed(U, r, p);
        if (s.supersonic_margin() <= 0.0)
            throw BranchError("solve_background: converged to the subsonic root");
        fill_derived(s, p);
        return s;
    }

    // Bisection fallback on the speed-only equation over [q0, sqrt(2*C0)).
    double lo = p.q0, hi = Umax * (1.0 - 1e-15);
    double flo = speed_equation(lo, r, p);
    if (flo > 0.0)
        throw NoConvergence("solve_background: no supersonic root bracketed at r = " +
                            std::to_string(r));
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (speed_equation(mid, r, p) > 0.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-16 * hi) break;
    }
    U = 0.5 * (lo + hi);
    // Final Newton polish on the scalar equation (quadratic cleanup).
    for (int it = 0; it < 4; ++it) {
        const double rho_e = mass / (r * r * U);
        const double c2 = sound_speed_sq(rho_e, p);
        const double g = speed_equation(U, r, p);
        const double dg = (U * U - c2) / U;
        if (dg <= 0.0) break;
        U -= g / dg;
    }
    s = from_speed(U, r, p);
    if (s.supersonic_margin() <= 0.0)
        throw BranchError("solve_background: bisection landed subsonic at r = " +
                          std::to_string(r));
    fill_derived(s, p);
    return s;
}

std::pair<double, double> background_derivatives(const BackgroundState& s,
                                                 const GasParams& p) {
    const double D = s.supersonic_margin();
    const double drho = -2.0 * p.rho0 * p.q0 * s.U_hat / (s.r * s.r * s.r * D);
    const double dU = 2.0 * s.U_hat * s.c2 / (s.r * D);
    return {drho, dU};
}

LinearizationCoefficients linearization_coefficients(const BackgroundState& s,
                                                     const GasParams& p) {
    const double g = p.gamma;
    const double U2 = s.U_hat * s.U_hat;
    const double U4 = U2 * U2;
    const double c2 = s.c2;
    const double c4 = c2 * c2;
    const double D = U2 - c2;
    const double D2 = D * D;

    LinearizationCoefficients lc;
    lc.P1 = c2 / D;
    lc.P2 = 2.0 * ((g - 1.0) * U4 + c4 + U2 * c2) / D2;
    // Closed forms from differentiating P1, P2 along the background ODE
    // (chain rule with U' = 2*U*c^2/(r*D) and (c^2)' = -(g-1)*U*U').
    lc.dP1_dr = -c2 * (2.0 * (g - 1.0) * U4 + 4.0 * U2 * c2) / (s.r * D2 * D);
    lc.dP2_dr = 4.0 * U2 * c2 *
                ((g - 1.0) * (1.0 - 2.0 * g) * U4 + (5.0 - 7.0 * g) * U2 * c2 - 6.0 * c4) /
                (s.r * D2 * D2);
    return lc;
}

std::vector<BackgroundState> background_table(const std::vector<double>& radii,
                                              const GasParams& p) {
    std::vector<BackgroundState> table;
    table.reserve(radii.size());
    const BackgroundState* hint = nullptr;
    for (double r : radii) {
        table.push_back(solve_background(r, p, hint));
        hint = &table.back();
    }
    return table;
}

double BackgroundPotential::operator()(double r) const {
    if (r < 1.0) throw DomainError("BackgroundPotential: r must be >= 1");
    if (r == 1.0) return 0.0;
    // Panels per decade keep the 16-point rule at machine accuracy.
    const int panels = std::max(1, static_cast<int>(std::ceil(8.0 * std::log10(r))) + 1);
    const auto rule = gauss_legendre(16);
    double acc = 0.0;
    BackgroundState hint;
    bool have_hint = false;
    const double step = (r - 1.0) / panels;
    for (int k = 0; k < panels; ++k) {
        const double a = 1.0 + k * step;
        const double b = a + step;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j];
            const auto st = solve_background(x, params_, have_hint ? &hint : nullptr);
            hint = st;
            have_hint = true;
            acc += 0.5 * (b - a) * rule.weights[j] * st.U_hat;
        }
    }
    return acc;
}

double BumpProfile::operator()(double phi) const {
    const double t = (phi - center) / width;
    if (t <= -1.0 || t >= 1.0) return 0.0;
    return amplitude * std::exp(-1.0 / (1.0 - t * t));
}

double BumpProfile::d1(double phi) const {
    const double t = (phi - center) / width;
    if (t <= -1.0 || t >= 1.0) return 0.0;
    const double m = 1.0 - t * t;
    const double sp = -2.0 * t / (m * m);
    return amplitude * std::exp(-1.0 / m) * sp / width;
}

double BumpProfile::d2(double phi) const {
    const double t = (phi - center) / width;
    if (t <= -1.0 || t >= 1.0) return 0.0;
    const double m = 1.0 - t * t;
    const double sp = -2.0 * t / (m * m);
    const double spp = (-2.0 - 6.0 * t * t) / (m * m * m);
    return amplitude * std::exp(-1.0 / m) * (sp * sp + spp) / (width * width);
}

double initial_density_profile(double phi, double eps, const BumpProfile& Phi0,
                               const BumpProfile& Phi1, const GasParams& p) {
    if (phi < 0.0 || phi > p.phi0)
        throw DomainError("initial_density_profile: phi outside [0, phi0]");
    const double g = p.gamma;
    const double brace = g / (g - 1.0) * std::pow(p.rho0, g - 1.0) -
                         0.5 * (2.0 * p.q0 * eps * Phi1(phi) +
                                eps * eps * Phi1(phi) * Phi1(phi) +
                                eps * eps * Phi0.d1(phi) * Phi0.d1(phi));
    if (brace < 0.0)
        throw CavitationError("initial density brace is negative at phi = " +
                              std::to_string(phi));
    return std::pow((g - 1.0) / g, 1.0 / (g - 1.0)) * std::pow(brace, 1.0 / (g - 1.0));
}

}  // namespace nozzle
