#include "nozzle/zfields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace nozzle {

Poly3 Poly3::random(int deg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<Term> terms;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; j + i <= deg; ++j)
            for (int k = 0; k + j + i <= deg; ++k)
                terms.push_back({i, j, k, coeff(rng)});
    return Poly3(std::move(terms));
}

namespace {
double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}
}  // namespace

double Poly3::value(const Vec3& x) const {
    double acc = 0.0;
    for (const auto& t : terms_)
        acc += t.coeff * ipow(x[0], t.i) * ipow(x[1], t.j) * ipow(x[2], t.k);
    return acc;
}

Vec3 Poly3::gradient(const Vec3& x) const {
    Vec3 g{0.0, 0.0, 0.0};
    for (const auto& t : terms_) {
        if (t.i > 0) g[0] += t.coeff * t.i * ipow(x[0], t.i - 1) * ipow(x[1], t.j) * ipow(x[2], t.k);
        if (t.j > 0) g[1] += t.coeff * t.j * ipow(x[0], t.i) * ipow(x[1], t.j - 1) * ipow(x[2], t.k);
        if (t.k > 0) g[2] += t.coeff * t.k * ipow(x[0], t.i) * ipow(x[1], t.j) * ipow(x[2], t.k - 1);
    }
    return g;
}

Mat3 Poly3::hessian(const Vec3& x) const {
    Mat3 h{};
    for (const auto& t : terms_) {
        const double c = t.coeff;
        if (t.i > 1) h[0][0] += c * t.i * (t.i - 1) * ipow(x[0], t.i - 2) * ipow(x[1], t.j) * ipow(x[2], t.k);
        if (t.j > 1) h[1][1] += c * t.j * (t.j - 1) * ipow(x[0], t.i) * ipow(x[1], t.j - 2) * ipow(x[2], t.k);
        if (t.k > 1) h[2][2] += c * t.k * (t.k - 1) * ipow(x[0], t.i) * ipow(x[1], t.j) * ipow(x[2], t.k - 2);
        if (t.i > 0 && t.j > 0)
            h[0][1] += c * t.i * t.j * ipow(x[0], t.i - 1) * ipow(x[1], t.j - 1) * ipow(x[2], t.k);
        if (t.i > 0 && t.k > 0)
            h[0][2] += c * t.i * t.k * ipow(x[0], t.i - 1) * ipow(x[1], t.j) * ipow(x[2], t.k - 1);
        if (t.j > 0 && t.k > 0)
            h[1][2] += c * t.j * t.k * ipow(x[0], t.i) * ipow(x[1], t.j - 1) * ipow(x[2], t.k - 1);
    }
    h[1][0] = h[0][1];
    h[2][0] = h[0][2];
    h[2][1] = h[1][2];
    return h;
}

FieldJet Poly3::jet(const Vec3& x) const { return {value(x), gradient(x), hessian(x)}; }

Vec3 rotation_field(int i, const Vec3& x) {
    switch (i) {
        case 1: return {x[1], -x[0], 0.0};
        case 2: return {0.0, x[2], -x[1]};
        case 3: return {-x[2], 0.0, x[0]};
        default: throw DomainError("rotation_field: index must be 1..3");
    }
}

namespace {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 matvec(const Mat3& m, const Vec3& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

// Constant Jacobian of the i-th rotation field.
Mat3 rotation_jacobian(int i) {
    Mat3 J{};
    switch (i) {
        case 1: J[0][1] = 1.0; J[1][0] = -1.0; break;
        case 2: J[1][2] = 1.0; J[2][1] = -1.0; break;
        case 3: J[0][2] = -1.0; J[2][0] = 1.0; break;
        default: throw DomainError("rotation_jacobian: index must be 1..3");
    }
    return J;
}

void require_off_origin(const Vec3& x) {
    if (norm(x) == 0.0) throw DomainError("rotation fields are undefined at the origin");
}

}  // namespace

double z_apply(int i, const FieldJet& f, const Vec3& x) {
    return dot(rotation_field(i, x), f.grad);
}

double z_field_identity_check(const FieldJet& f, const FieldJet& g, const Vec3& x) {
    require_off_origin(x);
    const double r2 = dot(x, x);
    const double lhs = dot(f.grad, g.grad);
    const double radial = dot(x, f.grad) * dot(x, g.grad) / r2;
    double tangential = 0.0;
    for (int i = 1; i <= 3; ++i) tangential += z_apply(i, f, x) * z_apply(i, g, x);
    return std::abs(lhs - radial - tangential / r2);
}

// Z_i(Z_j f) with the full second-derivative structure:
// grad(w_j . grad f) = J_j^T grad f + H w_j.
static double nested_rotation(int i, int j, const FieldJet& f, const Vec3& x) {
    const Vec3 wi = rotation_field(i, x);
    const Vec3 wj = rotation_field(j, x);
    const Mat3 Jj = rotation_jacobian(j);
    Vec3 grad_zjf = matvec(f.hess, wj);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) grad_zjf[a] += Jj[b][a] * f.grad[b];
    return dot(wi, grad_zjf);
}

double commutator_check(int i, int j, const FieldJet& f, const Vec3& x) {
    require_off_origin(x);
    if (i == j) return 0.0;
    const double comm = nested_rotation(i, j, f, x) - nested_rotation(j, i, f, x);
    // Cyclic third index with orientation: [Z1,Z2]=Z3, [Z2,Z3]=Z1, [Z3,Z1]=Z2.
    const int k = 6 - i - j;
    const bool forward = (j - i + 3) % 3 == 1;
    const double zk = z_apply(k, f, x);
    return std::abs(comm - (forward ? zk : -zk));
}

double radial_commutator_check(int i, const FieldJet& f, const Vec3& x) {
    require_off_origin(x);
    const double r = norm(x);
    const Vec3 w = rotation_field(i, x);
    // Z_i (d_r f): gradient of (x . grad f)/r is (grad f + H x)/r - (x.grad f) x / r^3.
    const Vec3 Hx = matvec(f.hess, x);
    Vec3 grad_dr{};
    const double xg = dot(x, f.grad);
    for (int a = 0; a < 3; ++a)
        grad_dr[a] = (f.grad[a] + Hx[a]) / r - xg * x[a] / (r * r * r);
    const double z_dr = dot(w, grad_dr);
    // d_r (Z_i f) = x . grad(w . grad f) / r with grad(w.grad f) = J^T grad f + H w.
    const Mat3 J = rotation_jacobian(i);
    Vec3 grad_zf = matvec(f.hess, w);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) grad_zf[a] += J[b][a] * f.grad[b];
    const double dr_z = dot(x, grad_zf) / r;
    return std::abs(z_dr - dr_z);
}

double z_radius_check(int i, const Vec3& x) {
    require_off_origin(x);
    const double r = norm(x);
    FieldJet radius;
    radius.value = r;
    radius.grad = {x[0] / r, x[1] / r, x[2] / r};
    return std::abs(z_apply(i, radius, x));
}

double tangential_bound_gap(const FieldJet& v, const Vec3& x) {
    require_off_origin(x);
    const double r = norm(x);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 3; ++i)
        worst = std::max(worst, std::abs(z_apply(i, v, x)) - r * norm(v.grad));
    return worst;
}

double gradient_reconstruction_check(const FieldJet& f, const Vec3& x) {
    require_off_origin(x);
    const double r = norm(x);
    const double r2 = r * r;
    const double dr = dot(x, f.grad) / r;
    const double z1 = z_apply(1, f, x);
    const double z2 = z_apply(2, f, x);
    const double z3 = z_apply(3, f, x);
    const double rec1 = x[0] / r * dr + x[1] / r2 * z1 - x[2] / r2 * z3;
    const double rec2 = x[1] / r * dr + x[2] / r2 * z2 - x[0] / r2 * z1;
    const double rec3 = x[2] / r * dr + x[0] / r2 * z3 - x[1] / r2 * z2;
    return std::max({std::abs(rec1 - f.grad[0]), std::abs(rec2 - f.grad[1]),
                     std::abs(rec3 - f.grad[2])});
}

ZFieldProbeReport z_field_probe(int n_probes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(1.0, 4.0);
    std::uniform_real_distribution<double> angle(0.0, 1.0);
    ZFieldProbeReport rep;
    for (int k = 0; k < n_probes; ++k) {
        const Poly3 f = Poly3::random(3, rng());
        const Poly3 g = Poly3::random(3, rng());
        const double r = radius(rng);
        const double phi = angle(rng) * 1.2;
        const double theta = angle(rng) * 2.0 * M_PI;
        const Vec3 x{r * std::cos(theta) * std::sin(phi), r * std::sin(theta) * std::sin(phi),
                     r * std::cos(phi)};
        const FieldJet jf = f.jet(x);
        const FieldJet jg = g.jet(x);
        rep.max_identity_residual =
            std::max(rep.max_identity_residual, z_field_identity_check(jf, jg, x));
        for (int i = 1; i <= 3; ++i) {
            for (int j = 1; j <= 3; ++j)
                rep.max_commutator_residual =
                    std::max(rep.max_commutator_residual, commutator_check(i, j, jf, x));
            rep.max_radial_commutator =
                std::max(rep.max_radial_commutator, radial_commutator_check(i, jf, x));
            rep.max_radius_residual = std::max(rep.max_radius_residual, z_radius_check(i, x));
        }
        rep.max_tangential_gap = std::max(rep.max_tangential_gap, tangential_bound_gap(jf, x));
        rep.max_reconstruction_residual =
            std::max(rep.max_reconstruction_residual, gradient_reconstruction_check(jf, x));
    }
    return rep;
}

}  // namespace nozzle
