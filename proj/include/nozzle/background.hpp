#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nozzle/gas.hpp"

namespace nozzle {

// Purely radial flow state at one radius, together with the linearization
// coefficients needed by the energy diagnostics.
struct BackgroundState {
    double r = 1.0;
    double rho_hat = 0.0;  // density
    double U_hat = 0.0;    // radial speed
    double c2 = 0.0;       // squared sound speed
    double drho_dr = 0.0;
    double dU_dr = 0.0;
    double P1 = 0.0;       // c^2 / (U^2 - c^2)
    double P2 = 0.0;       // damping coefficient of the linearized operator
    double dP1_dr = 0.0;
    double dP2_dr = 0.0;

    double supersonic_margin() const { return U_hat * U_hat - c2; }
};

// Solves the algebraic system {mass conservation, Bernoulli} at radius r on
// the supersonic branch.  `hint` seeds Newton (continuation along a sweep);
// a bracketed bisection on the speed-only equation is the fallback.
BackgroundState solve_background(double r, const GasParams& params,
                                 const BackgroundState* hint = nullptr);

// Both radial derivatives of (rho_hat, U_hat), from the closed forms obtained
// by differentiating the conservation pair.
std::pair<double, double> background_derivatives(const BackgroundState& state,
                                                 const GasParams& params);

// P1, P2 and their radial derivatives from the closed forms.
struct LinearizationCoefficients {
    double P1, P2, dP1_dr, dP2_dr;
};
LinearizationCoefficients linearization_coefficients(const BackgroundState& state,
                                                     const GasParams& params);

// Sweeps a strictly increasing radius list with Newton continuation.
std::vector<BackgroundState> background_table(const std::vector<double>& radii,
                                              const GasParams& params);

// Antiderivative of U_hat from 1 to r (panelled Gauss-Legendre).  Used to
// recover the perturbation potential from a marched trace.
class BackgroundPotential {
public:
    explicit BackgroundPotential(const GasParams& params) : params_(params) {}
    double operator()(double r) const;

private:
    GasParams params_;
};

// Smooth compactly supported angular profile c * exp(-1/(1 - t^2)) with
// t = (phi - center)/width, zero for |t| >= 1.
struct BumpProfile {
    double center = 0.0;
    double width = 1.0;
    double amplitude = 1.0;

    double operator()(double phi) const;
    double d1(double phi) const;
    double d2(double phi) const;
    bool supports(double phi) const {
        const double t = (phi - center) / width;
        return t > -1.0 && t < 1.0;
    }
};

// Entrance density under the perturbed initial data: Bernoulli evaluated on
// the entrance sphere with speed contributions from both initial profiles.
double initial_density_profile(double phi, double eps, const BumpProfile& Phi0,
                               const BumpProfile& Phi1, const GasParams& params);

}  // namespace nozzle
