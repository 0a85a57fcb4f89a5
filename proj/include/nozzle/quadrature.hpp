#pragma once

#include <functional>
#include <vector>

namespace nozzle {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes by Newton iteration on the Legendre polynomial; cached per n.
const GaussRule& gauss_legendre(int n);

// Integral of f over [a, b] with one n-point rule.
double gl_integrate(const std::function<double(double)>& f, double a, double b, int n);

// Panelled rule: `panels` equal subintervals, n points each.
double gl_integrate_panels(const std::function<double(double)>& f, double a, double b,
                           int n, int panels);

}  // namespace nozzle
