#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nozzle/config.hpp"
#include "nozzle/diagnostics.hpp"

namespace nozzle {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

// Pinned acceptance thresholds.
namespace thresholds {
inline constexpr double kConservationRel = 1e-10;       // background mass identity
inline constexpr double kSlopeTol = 0.05;               // background power-law slopes
inline constexpr double kFarSpeedFactor = 10.0;         // |U(R) - sqrt2| < factor * R^(2(1-g))
inline constexpr double kCoefficientFdRel = 1e-6;       // closed forms vs central differences
inline constexpr double kConvergenceOrder = 2.0;        // unperturbed march refinement
inline constexpr double kDecaySlopeTol = 0.15;          // perturbed decay fits
inline constexpr double kAngularDecayCap = 10.0;        // sup (|Zu|/r) r^sigma / eps
inline constexpr double kEnergySpread = 0.25;           // eps^2 scaling agreement
inline constexpr double kZResidual = 1e-10;             // rotation-field identities
inline constexpr double kMomentResidual = 1e-12;        // extension moment system
inline constexpr double kCubicJump = 1e-9;              // C^3 reproduction jumps
inline constexpr double kRatioDrift = 0.10;             // interpolation ratio stability
inline constexpr double kExtensionSpread = 4.0;         // sup-norm ratio spread over T
inline constexpr double kP2LimitCapFactor = 4.0;        // bound on |P2 - 2(g-1)| r^(2(g-1))
inline constexpr double kC2BandLow = 0.5;               // c^2 band against the background
inline constexpr double kC2BandHigh = 2.0;
}  // namespace thresholds

// Criterion groups.  Each returns one CheckResult per sub-check.
std::vector<CheckResult> verify_background_checks(const ExperimentConfig& cfg);
std::vector<CheckResult> verify_certificate_checks(const ExperimentConfig& cfg);
std::vector<CheckResult> verify_unperturbed_convergence(const ExperimentConfig& cfg);
std::vector<CheckResult> verify_perturbed_march(const ExperimentConfig& cfg);
std::vector<CheckResult> verify_energy_scaling(const ExperimentConfig& cfg);
std::vector<CheckResult> verify_toolkit(const ExperimentConfig& cfg);

std::vector<CheckResult> verify_all(const ExperimentConfig& cfg);

}  // namespace nozzle
