#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nozzle/errors.hpp"

namespace nozzle {

// Parameters of the weighted interpolation inequality
// | r^tau grad^j v |_{L^s} <= C | r^alpha grad^m v |_{L^p}^a | r^beta v |_{L^q}^{1-a}.
// q may be infinite.
struct InterpolationExponents {
    double s = 0.0;
    double tau = 0.0;
    double p = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double q = 0.0;  // may be +infinity
    double a = 0.0;
    int j = 0;
    int m = 0;
    int n = 3;  // space dimension
};

// Checks the full admissibility system: the basic range conditions, the
// dimensional-balance equation with its weight restriction, the borderline
// ordering condition, and the equality forced when a equals j/m.
bool weighted_interpolation_admissible(const InterpolationExponents& e,
                                       std::string* why = nullptr);

// The four first-derivative/second-derivative exponent sets exercised by the
// harness (s=4, p=2, q=inf, a=1/2, j=1, m=2, n=3), indexed 1..4:
//   1: tau=(2g+2s-1)/4,   alpha=(2g-1)/2,     beta=sigma
//   2: tau=(4g+1)/4,      alpha=(2g+1)/2,     beta=g
//   3: tau=(8g-7-d)/4,    alpha=(4g-3-d)/2,   beta=2(g-1)
//   4: tau=(8g-3-d)/4,    alpha=(4g-1-d)/2,   beta=2g-1
InterpolationExponents canonical_exponent_set(int which, double gamma, double sigma,
                                              double delta);

// Axisymmetric test function on the cone with analytic partial derivatives
// up to total order 2: product of mollifier bumps in r and phi.
struct ConeBump {
    double r_center = 0.0, r_width = 1.0;
    double phi_center = 0.0, phi_width = 1.0;
    double amplitude = 1.0;

    // d^(a+b) u / dr^a dphi^b for a + b <= 2.
    double partial(double r, double phi, int a, int b) const;
    double r_lo() const { return r_center - r_width; }
    double r_hi() const { return r_center + r_width; }
};

// Ratio |r^tau grad u|_{L4} / (|r^alpha grad2 u|_{L2}^(1/2) |r^beta u|_{Linf}^(1/2))
// for one of the canonical sets.  grid_level doubles the quadrature panels.
double inequality_ratio(int which, const ConeBump& u, double gamma, double sigma,
                        double delta, double phi0, int grid_level = 0);

struct RatioSample {
    int which = 0;
    int member = 0;
    int grid_level = 0;
    double ratio = 0.0;
};

// Seeded family sweep: `members` bumps with randomized centers, widths and
// support radii, each evaluated at grid levels 0..levels-1.
std::vector<RatioSample> inequality_family_sweep(int which, int members, int levels,
                                                 double gamma, double sigma, double delta,
                                                 double phi0, std::uint64_t seed);

}  // namespace nozzle
