#include "nozzle/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nozzle {

namespace {

GaussRule compute_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th positive root.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence up to degree n.
            p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            const double dp = n * (x * p1 - p2) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                p1 = 1.0;
                p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
                }
                break;
            }
        }
        double p2 = 0.0;
        {
            double a = 1.0, b = 0.0;
            for (int j = 0; j < n; ++j) {
                const double c = b;
                b = a;
                a = ((2.0 * j + 1.0) * x * b - j * c) / (j + 1.0);
            }
            p1 = a;
            p2 = b;
        }
        const double dp = n * (x * p1 - p2) / (x * x - 1.0);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const auto& rule = gauss_legendre(n);
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        acc += rule.weights[j] * f(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j]);
    return 0.5 * (b - a) * acc;
}

double gl_integrate_panels(const std::function<double(double)>& f, double a, double b,
                           int n, int panels) {
    double acc = 0.0;
    const double step = (b - a) / panels;
    for (int k = 0; k < panels; ++k)
        acc += gl_integrate(f, a + k * step, a + (k + 1) * step, n);
    return acc;
}

}  // namespace nozzle
