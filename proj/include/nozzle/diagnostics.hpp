#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nozzle/background.hpp"
#include "nozzle/march.hpp"

namespace nozzle {

// Mass flux through the sphere cap at the slice radius:
// 2*pi * integral of rho * d_r Phi * r^2 * sin(phi) dphi.
double mass_flux(const FlowSlice& slice, const GasParams& params);

// The entrance flux under the perturbed initial data, evaluated from the
// closed-form profiles by quadrature.
double entrance_mass_flux(const BumpProfile& Phi0, const BumpProfile& Phi1, double eps,
                          const GasParams& params);

// Weighted surface and volume energies of the perturbation at derivative
// order k.  Gradient magnitudes are realized as the mixed-derivative sums
// |d_r^a d_phi^b (.)| / r^b over a + b = k.
struct EnergyReport {
    int k = 0;
    double eps = 0.0;
    std::vector<double> T_values;
    std::vector<double> surface_dr;  // T^(mu+2k) * surface integral of |grad^k d_r u|^2
    std::vector<double> surface_Z;   // T^(mu-2g+2k) * surface integral of |grad^k (Zu/r)|^2
    std::vector<double> volume_dr;   // cumulative r-integral with weight r^(mu-1-d+2k)
    std::vector<double> volume_Z;    // cumulative r-integral with weight r^(mu+1-2g+2k)
};

EnergyReport weighted_energy(const MarchTrace& trace, int k, double eps,
                             const std::vector<double>& T_values);

// r^mu * a(r) with a(r) = 1 + r^(-delta); also returns a and a'.
struct MultiplierWeight {
    double weight = 0.0;
    double a = 0.0;
    double a_prime = 0.0;
};
MultiplierWeight multiplier_weight(double r, const GasParams& params);

// Positivity certificates of the two energy-identity coefficients.  The
// radial coefficient margin is normalized by r^delta, the angular one by
// r^(2(gamma-1)); both minima must stay positive.
struct CertificateReport {
    double mu_used = 0.0;
    double min_radial_normalized = 0.0;   // min over r of coefficient * r^delta
    double min_angular_normalized = 0.0;  // min over r of coefficient * r^(2(g-1))
    double argmin_radial = 0.0;
    double argmin_angular = 0.0;
    bool pass = false;
};

CertificateReport positivity_certificates(const std::vector<BackgroundState>& table,
                                          const GasParams& params,
                                          std::optional<double> mu_override = std::nullopt);

// Least-squares power-law fit of log y against log r.
struct DecayFit {
    std::string quantity;
    double r_lo = 0.0, r_hi = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms of log-residuals
    int points = 0;
};

DecayFit decay_fit(const std::vector<double>& r, const std::vector<double>& y,
                   double r_lo, double r_hi, const std::string& quantity = "");

// Decay series extracted from a trace: per stored radius, the angular sup of
// |d_r dot Phi| and of |d_phi dot Phi| / r, plus the c^2 range.
struct DecaySeries {
    std::vector<double> r;
    std::vector<double> sup_dr;     // sup_phi |d_r dot Phi|
    std::vector<double> sup_Z_r;    // sup_phi |d_phi dot Phi| / r
    std::vector<double> c2_min;
    std::vector<double> c2_max;
};

DecaySeries decay_series(const MarchTrace& trace);

}  // namespace nozzle
