#pragma once

#include <span>
#include <vector>

namespace nozzle {

// Finite-difference weights for the m-th derivative at point z from
// arbitrary nodes x (Fornberg's recurrence).  Returns weights for
// derivatives 0..m, flattened as w[d * n + i].
std::vector<double> fd_weights(double z, std::span<const double> x, int m);

// Fourth-order central derivatives of a function sampled on a uniform grid.
// Ghost nodes come from even reflection: exact at the axis (axisymmetric
// fields are even there) and Neumann-consistent at the wall.  The symmetric
// closure keeps the explicit march stable where one-sided stencils are not.
//
// The reflection ghost carries an O(h^3) error proportional to the third
// derivative at the wall.  For fields that satisfy a known wall relation
// u''' = ratio * u'' (solutions of the cone equation obey it with
// ratio = -cot(phi0), from differentiating the equation along the wall),
// passing `wall_third_ratio` restores the order by a Taylor correction whose
// feedback gain vanishes with h.  The correction cancels out of the
// antisymmetric first-derivative stencil, so the reported wall derivative
// stays exactly zero.
class AngularDerivative {
public:
    AngularDerivative(int n, double h, double wall_third_ratio = 0.0);

    // First and second derivative arrays of the samples.
    std::vector<double> d1(std::span<const double> u) const;
    std::vector<double> d2(std::span<const double> u) const;
    // Derivative at a single node (orders 1 or 2).
    double at(std::span<const double> u, int node, int order) const;

    int size() const { return n_; }
    double spacing() const { return h_; }

private:
    int n_;
    double h_;
    double ratio_;

    double wall_third_derivative(std::span<const double> u) const;
    double ghost(std::span<const double> u, int j, double d3) const;
};

// Value of a sampled function at an off-grid point by 6-point local
// Lagrange interpolation (uniform grid starting at x0).
double interp6(std::span<const double> u, double x0, double h, double x);

}  // namespace nozzle
