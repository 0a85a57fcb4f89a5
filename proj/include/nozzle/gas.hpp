#pragma once

#include <cmath>
#include <string>

#include "nozzle/errors.hpp"

namespace nozzle {

// Polytropic gas parameters and the derived weight exponents used by the
// energy diagnostics.  All constructors normalize the Bernoulli constant
// to C0 = 1, so the entrance density is a function of the entrance speed.
struct GasParams {
    double gamma = 1.4;   // adiabatic exponent, 1 < gamma < 2
    double q0 = 1.2;      // entrance radial speed
    double rho0 = 0.0;    // entrance density, forced by Bernoulli with C0 = 1
    double phi0 = 0.0;    // half-opening angle (radians)
    double C0 = 1.0;      // Bernoulli constant
    double mu = 0.0;      // radial energy weight exponent, 4*gamma - 6
    double sigma = 0.0;   // angular decay exponent, min(1, 2(gamma-1))
    double delta = 0.0;   // multiplier decay exponent

    double limit_speed_sq() const { return 2.0 * C0; }
};

// Squared sound speed as a function of density: c^2 = gamma * rho^(gamma-1).
inline double sound_speed_sq(double rho, const GasParams& p) {
    return p.gamma * std::pow(rho, p.gamma - 1.0);
}

// Density from the squared velocity magnitude via Bernoulli's law.
// Returns exactly 0 at the limit speed; throws CavitationError beyond it.
inline double density_from_speed_sq(double speed_sq, const GasParams& p) {
    if (speed_sq < 0.0)
        throw DomainError("density_from_speed_sq: negative squared speed");
    const double head = p.C0 - 0.5 * speed_sq;
    if (head < 0.0)
        throw CavitationError("speed exceeds the limit speed sqrt(2*C0)");
    if (head == 0.0) return 0.0;
    return std::pow((p.gamma - 1.0) / p.gamma * head, 1.0 / (p.gamma - 1.0));
}

// c^2 straight from the squared speed, avoiding the rho round trip:
// c^2 = (gamma - 1) * (C0 - speed_sq / 2).
inline double sound_speed_sq_from_speed_sq(double speed_sq, const GasParams& p) {
    return (p.gamma - 1.0) * (p.C0 - 0.5 * speed_sq);
}

inline double default_sigma(double gamma) {
    return std::min(1.0, 2.0 * (gamma - 1.0));
}

// Interior default: half of the admissible ceiling min(gamma-1, sigma-(gamma-1)).
inline double default_delta(double gamma) {
    const double s = default_sigma(gamma);
    return 0.5 * std::min(gamma - 1.0, s - (gamma - 1.0));
}

// Builds a parameter set from (gamma, q0, phi0); rho0 is forced by the
// normalization C0 = 1.  delta <= 0 selects the interior default.
GasParams make_gas_params(double gamma, double q0, double phi0, double delta = -1.0);

// Variant with rho0 given explicitly; rejects inconsistent (q0, rho0) pairs.
GasParams make_gas_params_with_rho0(double gamma, double q0, double rho0, double phi0,
                                    double delta = -1.0);

}  // namespace nozzle
