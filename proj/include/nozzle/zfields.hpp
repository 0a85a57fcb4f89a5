#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nozzle/errors.hpp"

namespace nozzle {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// A scalar field with exact first and second derivatives at a point.
struct FieldJet {
    double value = 0.0;
    Vec3 grad{};
    Mat3 hess{};
};

// Trivariate polynomial with exact differentiation; the probe family for
// the rotation-field identity checks.
class Poly3 {
public:
    struct Term {
        int i, j, k;
        double coeff;
    };

    Poly3() = default;
    explicit Poly3(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static Poly3 monomial(int i, int j, int k, double c) { return Poly3({{i, j, k, c}}); }
    // Random polynomial of total degree <= deg with coefficients in [-1, 1].
    static Poly3 random(int deg, std::uint64_t seed);

    double value(const Vec3& x) const;
    Vec3 gradient(const Vec3& x) const;
    Mat3 hessian(const Vec3& x) const;
    FieldJet jet(const Vec3& x) const;

private:
    std::vector<Term> terms_;
};

// The three rotation fields tangent to spheres, index 1..3.  Directions are
// fixed so the cyclic commutation relations and the gradient decomposition
// hold with positive signs.
Vec3 rotation_field(int i, const Vec3& x);

// Z_i f at x for a field with exact gradient.
double z_apply(int i, const FieldJet& f, const Vec3& x);

// | grad f . grad g  -  (d_r f)(d_r g) - (1/r^2) sum_i Z_i f Z_i g |.
double z_field_identity_check(const FieldJet& f, const FieldJet& g, const Vec3& x);

// | [Z_i, Z_j] f - Z_k f | with k the cyclic third index (0 when i == j).
double commutator_check(int i, int j, const FieldJet& f, const Vec3& x);

// | [Z_i, d_r] f |; vanishes identically.
double radial_commutator_check(int i, const FieldJet& f, const Vec3& x);

// | Z_i r |.
double z_radius_check(int i, const Vec3& x);

// max_i |Z_i v| - r |grad v| (<= 0 up to roundoff).
double tangential_bound_gap(const FieldJet& v, const Vec3& x);

// | d_k f - reconstruction through (d_r, Z) |, maximized over k.
double gradient_reconstruction_check(const FieldJet& f, const Vec3& x);

// Summary of the randomized probe sweep used by the verification runner.
struct ZFieldProbeReport {
    double max_identity_residual = 0.0;        // dot-product identity
    double max_commutator_residual = 0.0;      // cyclic commutators
    double max_radial_commutator = 0.0;        // [Z, d_r]
    double max_radius_residual = 0.0;          // Z r
    double max_tangential_gap = 0.0;           // |Zv| - r|grad v|
    double max_reconstruction_residual = 0.0;  // cartesian gradient rebuild
};

ZFieldProbeReport z_field_probe(int n_probes, std::uint64_t seed);

}  // namespace nozzle
