#include "nozzle/extension.hpp"

#include <cmath>

#include "nozzle/fd.hpp"

namespace nozzle {

double ExtensionCoefficients::moment_residual(int k) const {
    double acc = 0.0;
    for (int j = 1; j <= 4; ++j) acc += lambda[j - 1] * std::pow(-double(j), k);
    return acc - 1.0;
}

ExtensionCoefficients extension_coefficients() {
    // Vandermonde system sum_j (-j)^k lambda_j = 1, k = 0..3; eliminated by
    // Gauss with partial pivoting (4x4, exact to roundoff).
    double A[4][5];
    for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < 4; ++j) A[k][j] = std::pow(-double(j + 1), k);
        A[k][4] = 1.0;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int row = col + 1; row < 4; ++row)
            if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
        for (int j = 0; j < 5; ++j) std::swap(A[col][j], A[piv][j]);
        for (int row = col + 1; row < 4; ++row) {
            const double f = A[row][col] / A[col][col];
            for (int j = col; j < 5; ++j) A[row][j] -= f * A[col][j];
        }
    }
    ExtensionCoefficients c;
    for (int row = 3; row >= 0; --row) {
        double acc = A[row][4];
        for (int j = row + 1; j < 4; ++j) acc -= A[row][j] * c.lambda[j];
        c.lambda[row] = acc / A[row][row];
    }
    return c;
}

double extension_cutoff(double s) {
    if (s <= 1.0) return 1.0;
    if (s >= 9.0 / 8.0) return 0.0;
    auto h = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
    const double t = (9.0 / 8.0 - s) * 8.0;  // 1 at s=1, 0 at s=9/8
    return h(t) / (h(t) + h(1.0 - t));
}

double extend_closed_form(const std::function<double(double)>& u, double T, double r) {
    if (r <= T) return u(r);
    if (r >= 9.0 / 8.0 * T) return 0.0;
    static const ExtensionCoefficients c = extension_coefficients();
    double acc = 0.0;
    for (int j = 1; j <= 4; ++j) acc += c.lambda[j - 1] * u(T + j * (T - r));
    return extension_cutoff(r / T) * acc;
}

RadialExtension::RadialExtension(std::vector<double> r_nodes, std::vector<double> values,
                                 double T)
    : r_(std::move(r_nodes)), u_(std::move(values)), T_(T) {
    if (r_.size() != u_.size() || r_.size() < 6)
        throw DomainError("RadialExtension: need matching sample arrays (>= 6 points)");
    h_ = r_[1] - r_[0];
    for (std::size_t i = 1; i + 1 < r_.size(); ++i)
        if (std::abs((r_[i + 1] - r_[i]) - h_) > 1e-9 * h_)
            throw DomainError("RadialExtension: samples must be uniformly spaced");
    if (T_ > r_.back() + 1e-12 * T_)
        throw ResolutionError("RadialExtension: samples do not reach the matching radius");
    // Deepest reflection used: T + 4*(T - 9T/8) = T/2.
    if (T_ / 2.0 < r_.front() - 1e-12)
        throw ResolutionError("RadialExtension: reflections reach below the sampled range");
    coeffs_ = extension_coefficients();
}

double RadialExtension::sample(double r) const {
    if (r < r_.front() - 1e-9 * h_ || r > r_.back() + 1e-9 * h_)
        throw ResolutionError("RadialExtension: reflected point outside samples");
    return interp6(u_, r_.front(), h_, r);
}

double RadialExtension::operator()(double r) const {
    if (r <= T_) return sample(r);
    if (r >= 9.0 / 8.0 * T_) return 0.0;
    double acc = 0.0;
    for (int j = 1; j <= 4; ++j) acc += coeffs_.lambda[j - 1] * sample(T_ + j * (T_ - r));
    return extension_cutoff(r / T_) * acc;
}

}  // namespace nozzle
