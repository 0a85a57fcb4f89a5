#include "nozzle/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nozzle/quadrature.hpp"

namespace nozzle {

namespace {
constexpr double kTol = 1e-12;

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }
}  // namespace

bool weighted_interpolation_admissible(const InterpolationExponents& e, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const double n = e.n;
    if (e.p < 1.0 || e.q < 1.0) return fail("p and q must be at least 1");
    if (e.m <= 0 || e.j < 0) return fail("need m > 0 and j >= 0");
    const double ratio = double(e.j) / double(e.m);
    if (e.a < ratio - kTol || e.a > 1.0 + kTol) return fail("a outside [j/m, 1]");
    if (!(e.s > 0.0)) return fail("s must be positive");
    if (!(inv(e.s) + e.tau / n > 0.0)) return fail("1/s + tau/n must be positive");
    if (!(inv(e.p) + e.alpha / n > 0.0)) return fail("1/p + alpha/n must be positive");
    if (!(inv(e.q) + e.beta / n > 0.0)) return fail("1/q + beta/n must be positive");
    const double gap = e.m - e.j - n * inv(e.p);
    if (gap > -kTol && std::abs(gap - std::round(gap)) < kTol)
        return fail("m - j - n/p is a nonnegative integer");

    const double lhs = inv(e.s) + (e.tau - e.j) / n;
    const double rhs = e.a * (inv(e.p) + (e.alpha - e.m) / n) +
                       (1.0 - e.a) * (inv(e.q) + e.beta / n);
    if (std::abs(lhs - rhs) > kTol) return fail("dimensional balance fails");
    const double combo = e.a * e.alpha + (1.0 - e.a) * e.beta;
    if (e.tau > combo + kTol) return fail("tau exceeds a*alpha + (1-a)*beta");

    if (std::abs((inv(e.q) + e.beta / n) - (inv(e.p) + (e.alpha - e.m) / n)) < kTol) {
        if (e.a * (e.alpha - e.m) + (1.0 - e.a) * e.beta + e.j > e.tau + kTol)
            return fail("borderline ordering condition fails");
    }
    if (std::abs(e.a - ratio) < kTol) {
        if (std::abs(e.tau - combo) > kTol)
            return fail("a = j/m forces tau = a*alpha + (1-a)*beta");
    }
    if (why) why->clear();
    return true;
}

InterpolationExponents canonical_exponent_set(int which, double g, double sigma,
                                              double delta) {
    InterpolationExponents e;
    e.s = 4.0;
    e.p = 2.0;
    e.q = std::numeric_limits<double>::infinity();
    e.a = 0.5;
    e.j = 1;
    e.m = 2;
    e.n = 3;
    switch (which) {
        case 1:
            e.tau = (2.0 * g + 2.0 * sigma - 1.0) / 4.0;
            e.alpha = (2.0 * g - 1.0) / 2.0;
            e.beta = sigma;
            break;
        case 2:
            e.tau = (4.0 * g + 1.0) / 4.0;
            e.alpha = (2.0 * g + 1.0) / 2.0;
            e.beta = g;
            break;
        case 3:
            e.tau = (8.0 * g - 7.0 - delta) / 4.0;
            e.alpha = (4.0 * g - 3.0 - delta) / 2.0;
            e.beta = 2.0 * (g - 1.0);
            break;
        case 4:
            e.tau = (8.0 * g - 3.0 - delta) / 4.0;
            e.alpha = (4.0 * g - 1.0 - delta) / 2.0;
            e.beta = 2.0 * g - 1.0;
            break;
        default:
            throw DomainError("canonical_exponent_set: which must be 1..4");
    }
    return e;
}

namespace {

// Mollifier bump on (-1, 1) with derivatives up to order 2.
struct Bump1 {
    static double val(double t) {
        if (t <= -1.0 || t >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - t * t));
    }
    static double d1(double t) {
        if (t <= -1.0 || t >= 1.0) return 0.0;
        const double m = 1.0 - t * t;
        return val(t) * (-2.0 * t / (m * m));
    }
    static double d2(double t) {
        if (t <= -1.0 || t >= 1.0) return 0.0;
        const double m = 1.0 - t * t;
        const double sp = -2.0 * t / (m * m);
        const double spp = (-2.0 - 6.0 * t * t) / (m * m * m);
        return val(t) * (sp * sp + spp);
    }
};

}  // namespace

double ConeBump::partial(double r, double phi, int a, int b) const {
    const double tr = (r - r_center) / r_width;
    const double tp = (phi - phi_center) / phi_width;
    auto dr = [&](int k) {
        const double scale = std::pow(r_width, -k);
        if (k == 0) return Bump1::val(tr);
        if (k == 1) return Bump1::d1(tr) * scale;
        return Bump1::d2(tr) * scale;
    };
    auto dp = [&](int k) {
        const double scale = std::pow(phi_width, -k);
        if (k == 0) return Bump1::val(tp);
        if (k == 1) return Bump1::d1(tp) * scale;
        return Bump1::d2(tp) * scale;
    };
    if (a + b > 2) throw DomainError("ConeBump: partials available up to order 2");
    return amplitude * dr(a) * dp(b);
}

namespace {

// Fixed pointwise realizations of the gradient magnitudes for axisymmetric
// fields: |grad u|^2 = (d_r u)^2 + (d_phi u / r)^2 and
// |grad2 u|^2 = (d_rr u)^2 + (d_rphi u / r)^2 + (d_phiphi u / r^2)^2.
double grad_mag(const ConeBump& u, double r, double phi) {
    const double ur = u.partial(r, phi, 1, 0);
    const double up = u.partial(r, phi, 0, 1) / r;
    return std::sqrt(ur * ur + up * up);
}

double grad2_mag(const ConeBump& u, double r, double phi) {
    const double urr = u.partial(r, phi, 2, 0);
    const double urp = u.partial(r, phi, 1, 1) / r;
    const double upp = u.partial(r, phi, 0, 2) / (r * r);
    return std::sqrt(urr * urr + urp * urp + upp * upp);
}

}  // namespace

double inequality_ratio(int which, const ConeBump& u, double gamma, double sigma,
                        double delta, double phi0, int grid_level) {
    const auto e = canonical_exponent_set(which, gamma, sigma, delta);
    const int pts = 24;
    const int panels_r = 8 << grid_level;
    const int panels_phi = 4 << grid_level;

    const double ra = std::max(1.0, u.r_lo());
    const double rb = u.r_hi();
    const double pa = std::max(0.0, u.phi_center - u.phi_width);
    const double pb = std::min(phi0, u.phi_center + u.phi_width);
    if (!(rb > ra) || !(pb > pa)) throw DegenerateInput("inequality_ratio: empty support");

    // 2*pi * integral over the cone with Jacobian r^2 sin(phi).
    auto cone_integral = [&](const std::function<double(double, double)>& f) {
        auto inner = [&](double r) {
            return gl_integrate_panels(
                [&](double phi) { return f(r, phi) * std::sin(phi); }, pa, pb, pts,
                panels_phi);
        };
        return 2.0 * M_PI *
               gl_integrate_panels([&](double r) { return inner(r) * r * r; }, ra, rb, pts,
                                   panels_r);
    };

    const double L4 = std::pow(
        cone_integral([&](double r, double phi) {
            return std::pow(std::pow(r, e.tau) * grad_mag(u, r, phi), 4.0);
        }),
        0.25);
    const double L2 = std::sqrt(cone_integral([&](double r, double phi) {
        const double w = std::pow(r, e.alpha) * grad2_mag(u, r, phi);
        return w * w;
    }));
    // sup norm over a 10x oversampled tensor grid of the support.
    double Linf = 0.0;
    const int nr = 10 * panels_r * 4, np = 10 * panels_phi * 4;
    for (int i = 0; i <= nr; ++i) {
        const double r = ra + (rb - ra) * i / nr;
        for (int j = 0; j <= np; ++j) {
            const double phi = pa + (pb - pa) * j / np;
            Linf = std::max(Linf,
                            std::pow(r, e.beta) * std::abs(u.partial(r, phi, 0, 0)));
        }
    }
    if (L2 <= 0.0 || Linf <= 0.0)
        throw DegenerateInput("inequality_ratio: vanishing right-hand side");
    return L4 / (std::sqrt(L2) * std::sqrt(Linf));
}

std::vector<RatioSample> inequality_family_sweep(int which, int members, int levels,
                                                 double gamma, double sigma, double delta,
                                                 double phi0, std::uint64_t seed) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(which) * 7919u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<RatioSample> out;
    out.reserve(static_cast<std::size_t>(members) * levels);
    for (int m = 0; m < members; ++m) {
        const double T = std::pow(2.0, 1.0 + 3.0 * uni(rng));  // support cap in [2, 16]
        ConeBump u;
        u.r_width = (0.15 + 0.3 * uni(rng)) * (T - 1.0);
        u.r_center = 1.0 + u.r_width + uni(rng) * (T - 1.0 - 2.0 * u.r_width);
        u.phi_width = (0.15 + 0.25 * uni(rng)) * phi0;
        u.phi_center = u.phi_width + uni(rng) * (phi0 - 2.0 * u.phi_width);
        u.amplitude = 0.5 + uni(rng);
        for (int level = 0; level < levels; ++level)
            out.push_back(
                {which, m, level, inequality_ratio(which, u, gamma, sigma, delta, phi0, level)});
    }
    return out;
}

}  // namespace nozzle
