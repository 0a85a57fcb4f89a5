#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nozzle/errors.hpp"

namespace nozzle {

// Weights of the four-point reflection extension.  They satisfy the moment
// conditions sum_j (-j)^k lambda_j = 1 for k = 0..3, which makes the
// extension C^3 across the matching radius.
struct ExtensionCoefficients {
    std::array<double, 4> lambda{};

    // Residual of the k-th moment condition, k = 0..3.
    double moment_residual(int k) const;
};

// Solves the 4x4 moment system.
ExtensionCoefficients extension_coefficients();

// C^inf cutoff: identically 1 for s <= 1, identically 0 for s >= 9/8.
double extension_cutoff(double s);

// Extension of a radial profile known in closed form on [1, T]: equals u on
// [1, T], reflects with the moment weights on (T, 9T/8], vanishes beyond.
double extend_closed_form(const std::function<double(double)>& u, double T, double r);

// Extension of a sampled radial profile.  Reflected points are evaluated by
// 6-point local Lagrange interpolation of the samples; requesting a
// reflection outside the sampled range raises ResolutionError.
class RadialExtension {
public:
    RadialExtension(std::vector<double> r_nodes, std::vector<double> values, double T);

    double operator()(double r) const;
    double matching_radius() const { return T_; }

private:
    std::vector<double> r_;
    std::vector<double> u_;
    double T_;
    double h_;
    ExtensionCoefficients coeffs_;
    double sample(double r) const;
};

}  // namespace nozzle
