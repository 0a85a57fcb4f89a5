#include <doctest.h>

#include <cmath>

#include "nozzle/diagnostics.hpp"
#include "support/oracles.hpp"

using namespace nozzle;

namespace {

GasParams default_params() { return make_gas_params(1.4, 1.2, M_PI / 6.0); }

BumpProfile default_bump(const GasParams& p) { return {0.5 * p.phi0, 0.22 * p.phi0, 1.0}; }

}  // namespace

TEST_CASE("mass flux of the unperturbed flow matches the closed form") {
    const GasParams p = default_params();
    // r^2 rho U is constant, so the flux is 2*pi*(1 - cos(phi0))*rho0*q0.
    const double expected = 2.0 * M_PI * (1.0 - std::cos(p.phi0)) * p.rho0 * p.q0;
    for (double r : {1.0, 2.0, 50.0}) {
        const auto bg = solve_background(r, p);
        FlowSlice s;
        s.r = r;
        s.grid = AngularGrid(p.phi0, 129);
        s.Phi.assign(129, 0.0);
        s.V.assign(129, bg.U_hat);
        CHECK(mass_flux(s, p) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("entrance flux agrees with the closed-form profile integral") {
    const GasParams p = default_params();
    const BumpProfile bump = default_bump(p);
    const double eps = 1e-3;

    // Term-by-term Simpson oracle on the closed-form integrand.
    const double oracle = oracles::simpson(
        [&](double phi) {
            const double rho = initial_density_profile(phi, eps, bump, bump, p);
            return 2.0 * M_PI * rho * (p.q0 + eps * bump(phi)) * std::sin(phi);
        },
        0.0, p.phi0, 4000);
    CHECK(entrance_mass_flux(bump, bump, eps, p) == doctest::Approx(oracle).epsilon(1e-10));

    // The sampled entrance slice reproduces the same flux by quadrature.
    const auto slice = initial_slice(bump, bump, eps, p, 129);
    CHECK(mass_flux(slice, p) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("mass flux is conserved along a perturbed march") {
    const GasParams p = default_params();
    const BumpProfile bump = default_bump(p);
    MarchOptions o;
    o.n_phi = 129;
    o.cfl = 0.4;
    o.store_targets = 33;
    const auto trace = march(bump, bump, 1e-3, 50.0, p, o);
    REQUIRE(trace.completed());
    const double f1 = mass_flux(trace.slices.front(), p);
    for (const auto& s : trace.slices)
        CHECK(std::abs(mass_flux(s, p) / f1 - 1.0) < 1e-4);
}

TEST_CASE("weighted energies vanish with the perturbation and scale quadratically") {
    const GasParams p = default_params();
    const BumpProfile bump = default_bump(p);
    MarchOptions o;
    o.n_phi = 65;
    o.cfl = 0.4;
    o.store_targets = 33;
    const double r_max = 30.0;
    std::vector<double> T_values{10.0, 20.0, 30.0};

    const auto zero_trace = march(bump, bump, 0.0, r_max, p, o);
    REQUIRE(zero_trace.completed());
    for (int k : {0, 1}) {
        const auto rep = weighted_energy(zero_trace, k, 0.0, T_values);
        for (double v : rep.surface_dr) CHECK(std::abs(v) < 1e-14);
        for (double v : rep.surface_Z) CHECK(std::abs(v) < 1e-14);
        for (double v : rep.volume_dr) CHECK(std::abs(v) < 1e-14);
        for (double v : rep.volume_Z) CHECK(std::abs(v) < 1e-14);
    }

    const auto t1 = march(bump, bump, 1e-3, r_max, p, o);
    const auto t2 = march(bump, bump, 2e-3, r_max, p, o);
    REQUIRE(t1.completed());
    REQUIRE(t2.completed());
    for (int k : {0, 1}) {
        const auto r1 = weighted_energy(t1, k, 1e-3, T_values);
        const auto r2 = weighted_energy(t2, k, 2e-3, T_values);
        for (std::size_t i = 0; i < T_values.size(); ++i) {
            CHECK(r2.surface_dr[i] / r1.surface_dr[i] == doctest::Approx(4.0).epsilon(0.2));
            CHECK(r2.surface_Z[i] / r1.surface_Z[i] == doctest::Approx(4.0).epsilon(0.2));
            CHECK(r2.volume_dr[i] / r1.volume_dr[i] == doctest::Approx(4.0).epsilon(0.2));
            CHECK(r2.volume_Z[i] / r1.volume_Z[i] == doctest::Approx(4.0).epsilon(0.2));
        }
    }
}

TEST_CASE("multiplier weight") {
    const GasParams p = default_params();
    const auto w1 = multiplier_weight(1.0, p);
    CHECK(w1.a == doctest::Approx(2.0));
    CHECK(p.mu == doctest::Approx(-0.4));
    // a decreases strictly to 1.
    double prev = w1.a;
    for (double r : {2.0, 10.0, 1e3, 1e6}) {
        const auto w = multiplier_weight(r, p).a;
        CHECK(w < prev);
        CHECK(w > 1.0);
        prev = w;
    }
    // Strict lower bound of the radial coefficient at 100 log radii.
    const auto radii = log_spaced_radii(1e6, 100);
    const auto table = background_table(radii, p);
    for (const auto& s : table) {
        const auto w = multiplier_weight(s.r, p);
        const double coeff = (s.P2 - 0.5 * (p.mu + 2.0)) * w.a - 0.5 * s.r * w.a_prime;
        CHECK(coeff > 0.5 * p.delta * std::pow(s.r, -p.delta));
    }
}

TEST_CASE("positivity certificates") {
    const auto radii = log_spaced_radii(1e6, 200);

    SUBCASE("pass for the admissible gamma grid") {
        for (double gamma : {1.2, 1.4, 1.6, 1.8}) {
            const GasParams p = make_gas_params(gamma, 1.2, M_PI / 6.0);
            const auto rep = positivity_certificates(background_table(radii, p), p);
            CHECK(rep.pass);
            CHECK(rep.min_radial_normalized > 0.5 * p.delta);
            CHECK(rep.min_angular_normalized > 0.0);
        }
    }
    SUBCASE("fail when mu exceeds its ceiling") {
        const GasParams p = default_params();
        const auto rep =
            positivity_certificates(background_table(radii, p), p, p.mu + 0.5);
        CHECK_FALSE(rep.pass);
        CHECK(rep.min_radial_normalized < 0.0);
    }
    SUBCASE("degenerate without decay in the multiplier tail") {
        GasParams p = default_params();
        p.delta = 0.0;  // handcrafted: the constructor would reject this
        const auto rep = positivity_certificates(background_table(radii, p), p);
        CHECK_FALSE(rep.pass);
    }
}

TEST_CASE("decay fit recovers exact power laws") {
    std::vector<double> r, y;
    for (int i = 0; i < 40; ++i) {
        r.push_back(std::pow(10.0, 1.0 + i * 0.05));
        y.push_back(3.7 * std::pow(r.back(), -2.0));
    }
    const auto fit = decay_fit(r, y, 10.0, 1000.0, "powerlaw");
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);

    SUBCASE("nonpositive samples are rejected") {
        y[5] = 0.0;
        CHECK_THROWS_AS(decay_fit(r, y, 10.0, 1000.0), DomainError);
    }
    SUBCASE("too few points are rejected") {
        CHECK_THROWS_AS(decay_fit(r, y, 10.0, 12.0), DomainError);
    }
}

TEST_CASE("decay series of a marched perturbation") {
    const GasParams p = default_params();
    // Default entrance data: velocity-only bump (see ExperimentConfig).
    const BumpProfile Phi0{0.55 * p.phi0, 0.2 * p.phi0, 0.0};
    const BumpProfile Phi1{0.55 * p.phi0, 0.2 * p.phi0, 1.0};
    MarchOptions o;
    o.n_phi = 129;
    o.cfl = 0.4;
    o.store_targets = 49;
    const auto trace = march(Phi0, Phi1, 1e-3, 100.0, p, o);
    REQUIRE(trace.completed());
    const auto series = decay_series(trace);

    const auto fit = decay_fit(series.r, series.sup_dr, 10.0, 100.0, "sup_dr");
    CHECK(std::abs(fit.slope + 0.8) < 0.15);

    const auto fitz = decay_fit(series.r, series.sup_Z_r, 10.0, 100.0, "sup_Z");
    CHECK(fitz.slope < -0.8 + 0.15);

    // c^2 r^(2(gamma-1)) within the background band.
    double lo = 1e300, hi = 0.0;
    const BackgroundState* hint = nullptr;
    BackgroundState bg;
    for (double r : series.r) {
        bg = solve_background(r, p, hint);
        hint = &bg;
        const double prod = bg.c2 * std::pow(r, 0.8);
        lo = std::min(lo, prod);
        hi = std::max(hi, prod);
    }
    for (std::size_t i = 0; i < series.r.size(); ++i) {
        const double w = std::pow(series.r[i], 0.8);
        CHECK(series.c2_min[i] * w > 0.5 * lo);
        CHECK(series.c2_max[i] * w < 2.0 * hi);
    }
}
