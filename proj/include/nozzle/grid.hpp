#pragma once

#include <cmath>
#include <vector>

#include "nozzle/errors.hpp"

namespace nozzle {

// Uniform angular grid on [0, phi0], both endpoints included.
struct AngularGrid {
    std::vector<double> nodes;
    double spacing = 0.0;

    AngularGrid() = default;
    AngularGrid(double phi0, int n) {
        if (n < 18) throw ConfigError("AngularGrid: need at least 16 interior nodes");
        nodes.resize(n);
        spacing = phi0 / (n - 1);
        for (int i = 0; i < n; ++i) nodes[i] = i * spacing;
        nodes.front() = 0.0;
        nodes.back() = phi0;
    }

    int size() const { return static_cast<int>(nodes.size()); }
    double phi0() const { return nodes.back(); }
};

// Log-spaced radii on [1, r_max] with exact endpoints.
inline std::vector<double> log_spaced_radii(double r_max, int count) {
    if (count < 2 || r_max <= 1.0) throw ConfigError("log_spaced_radii: bad arguments");
    std::vector<double> r(count);
    const double L = std::log(r_max);
    for (int i = 0; i < count; ++i) r[i] = std::exp(L * i / (count - 1));
    r.front() = 1.0;
    r.back() = r_max;
    return r;
}

}  // namespace nozzle
