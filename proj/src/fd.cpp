#include "nozzle/fd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nozzle {

std::vector<double> fd_weights(double z, std::span<const double> x, int m) {
    const int n = static_cast<int>(x.size());
    std::vector<double> c(static_cast<std::size_t>(m + 1) * n, 0.0);
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k * n + i] = c1 * (k * c[(k - 1) * n + i - 1] - c5 * c[k * n + i - 1]) / c2;
                c[i] = -c1 * c5 * c[i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[k * n + j] = (c4 * c[k * n + j] - k * c[(k - 1) * n + j]) / c3;
            c[j] = c4 * c[j] / c3;
        }
        c1 = c2;
    }
    return c;
}

AngularDerivative::AngularDerivative(int n, double h, double wall_third_ratio)
    : n_(n), h_(h), ratio_(wall_third_ratio) {
    if (n < 7) throw std::invalid_argument("AngularDerivative: grid too small");
}

double AngularDerivative::wall_third_derivative(std::span<const double> u) const {
    if (ratio_ == 0.0) return 0.0;
    // u''' = ratio * u'' at the wall; u'' from the plain reflected stencil.
    const double d2_wall =
        (-2.0 * u[n_ - 3] + 32.0 * u[n_ - 2] - 30.0 * u[n_ - 1]) / (12.0 * h_ * h_);
    return ratio_ * d2_wall;
}

double AngularDerivative::ghost(std::span<const double> u, int j, double d3) const {
    if (j < 0) return u[-j];  // axis: exact even reflection
    if (j < n_) return u[j];
    // Wall: even reflection plus the Taylor correction (s^3/3) u'''.
    const int k = j - (n_ - 1);
    const double s = k * h_;
    return u[2 * (n_ - 1) - j] + s * s * s / 3.0 * d3;
}

std::vector<double> AngularDerivative::d1(std::span<const double> u) const {
    const double d3 = wall_third_derivative(u);
    std::vector<double> out(n_);
    for (int i = 0; i < n_; ++i) {
        auto v = [&](int j) { return ghost(u, j, d3); };
        out[i] = (v(i - 2) - 8.0 * v(i - 1) + 8.0 * v(i + 1) - v(i + 2)) / (12.0 * h_);
    }
    return out;
}

std::vector<double> AngularDerivative::d2(std::span<const double> u) const {
    const double d3 = wall_third_derivative(u);
    std::vector<double> out(n_);
    for (int i = 0; i < n_; ++i) {
        auto v = [&](int j) { return ghost(u, j, d3); };
        out[i] = (-v(i - 2) + 16.0 * v(i - 1) - 30.0 * v(i) + 16.0 * v(i + 1) - v(i + 2)) /
                 (12.0 * h_ * h_);
    }
    return out;
}

double AngularDerivative::at(std::span<const double> u, int i, int order) const {
    const double d3 = wall_third_derivative(u);
    auto v = [&](int j) { return ghost(u, j, d3); };
    if (order == 1)
        return (v(i - 2) - 8.0 * v(i - 1) + 8.0 * v(i + 1) - v(i + 2)) / (12.0 * h_);
    return (-v(i - 2) + 16.0 * v(i - 1) - 30.0 * v(i) + 16.0 * v(i + 1) - v(i + 2)) /
           (12.0 * h_ * h_);
}

double interp6(std::span<const double> u, double x0, double h, double x) {
    const int n = static_cast<int>(u.size());
    if (n < 6) throw std::invalid_argument("interp6: need at least 6 samples");
    int left = static_cast<int>(std::floor((x - x0) / h)) - 2;
    left = std::clamp(left, 0, n - 6);
    double result = 0.0;
    for (int i = 0; i < 6; ++i) {
        double L = 1.0;
        const double xi = x0 + (left + i) * h;
        for (int j = 0; j < 6; ++j) {
            if (j == i) continue;
            const double xj = x0 + (left + j) * h;
            L *= (x - xj) / (xi - xj);
        }
        result += L * u[left + i];
    }
    return result;
}

}  // namespace nozzle
