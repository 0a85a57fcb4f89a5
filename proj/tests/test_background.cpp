#include <doctest.h>

#include <cmath>

#include "nozzle/background.hpp"
#include "nozzle/diagnostics.hpp"
#include "nozzle/grid.hpp"
#include "support/oracles.hpp"

using namespace nozzle;

namespace {
GasParams default_params() { return make_gas_params(1.4, 1.2, M_PI / 6.0); }
}  // namespace

TEST_CASE("density closure: vacuum limit, entrance state, frozen value") {
    const GasParams p = default_params();

    CHECK(density_from_speed_sq(2.0, p) == 0.0);
    // High-precision oracle for the stagnation density at gamma = 1.4:
    // ((gamma-1)/gamma)^(1/(gamma-1)) evaluated to 30 digits.
    CHECK(density_from_speed_sq(0.0, p) ==
          doctest::Approx(4.36344884754978587240087315722e-2).epsilon(1e-14));
    // The entrance speed reproduces the entrance density by construction.
    CHECK(density_from_speed_sq(p.q0 * p.q0, p) == doctest::Approx(p.rho0).epsilon(1e-14));

    CHECK_THROWS_AS(density_from_speed_sq(2.0 + 1e-12, p), CavitationError);

    // Strictly decreasing and continuous down to zero.
    double prev = density_from_speed_sq(0.0, p);
    for (int i = 1; i <= 200; ++i) {
        const double s = 2.0 * i / 200.0;
        const double rho = density_from_speed_sq(s, p);
        CHECK(rho < prev);
        prev = rho;
    }
    CHECK(density_from_speed_sq(2.0 - 1e-13, p) < 1e-30);
}

TEST_CASE("gas parameter validation") {
    CHECK_THROWS_AS(make_gas_params(2.5, 1.2, M_PI / 6.0), ConfigError);
    CHECK_THROWS_AS(make_gas_params(1.0, 1.2, M_PI / 6.0), ConfigError);
    CHECK_THROWS_AS(make_gas_params(1.4, 1.2, 2.0), ConfigError);
    // Subsonic entrance: q0^2 <= 2(gamma-1)/(gamma+1).
    CHECK_THROWS_AS(make_gas_params(1.4, 0.5, M_PI / 6.0), ConfigError);
    // Consistent explicit rho0 accepted, inconsistent rejected.
    const GasParams p = default_params();
    CHECK_NOTHROW(make_gas_params_with_rho0(1.4, 1.2, p.rho0, M_PI / 6.0));
    CHECK_THROWS_AS(make_gas_params_with_rho0(1.4, 1.2, p.rho0 * 1.01, M_PI / 6.0),
                    ConfigError);
    // Derived exponents.
    CHECK(p.mu == doctest::Approx(-0.4));
    CHECK(p.sigma == doctest::Approx(0.8));
    CHECK(p.delta == doctest::Approx(0.2));
}

TEST_CASE("background solve: entrance, bisection oracle, far field") {
    const GasParams p = default_params();

    const auto entrance = solve_background(1.0, p);
    CHECK(entrance.rho_hat == p.rho0);
    CHECK(entrance.U_hat == p.q0);

    // Independent bisection oracle on the eliminated speed equation.
    const auto s2 = solve_background(2.0, p);
    const double oracle_U = oracles::background_speed_by_bisection(2.0, 1.4, 1.2, p.rho0);
    CHECK(s2.U_hat == doctest::Approx(oracle_U).epsilon(1e-10));
    CHECK(s2.rho_hat == doctest::Approx(p.rho0 * p.q0 / (4.0 * oracle_U)).epsilon(1e-10));

    const auto far = solve_background(1e6, p);
    CHECK(std::abs(far.U_hat - std::sqrt(2.0)) < 10.0 * std::pow(1e6, 2.0 * (1.0 - 1.4)));
}

TEST_CASE("background conservation and monotonicity on the log grid") {
    const GasParams p = default_params();
    const auto radii = log_spaced_radii(1e6, 200);
    const auto table = background_table(radii, p);
    const double mass = p.rho0 * p.q0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& s = table[i];
        CHECK(std::abs(s.r * s.r * s.rho_hat * s.U_hat - mass) < 1e-10 * mass);
        CHECK(s.dU_dr > 0.0);
        CHECK(s.drho_dr < 0.0);
        if (i > 0) {
            CHECK(s.U_hat > table[i - 1].U_hat);
            CHECK(s.rho_hat < table[i - 1].rho_hat);
            CHECK(s.supersonic_margin() > table[i - 1].supersonic_margin());
        }
    }
}

TEST_CASE("background derivatives match central differences") {
    const GasParams p = default_params();
    for (double r : {1.5, 3.0, 20.0, 500.0}) {
        const auto s = solve_background(r, p);
        const double h = 1e-5 * r;
        auto U_of = [&](double rr) { return solve_background(rr, p).U_hat; };
        auto rho_of = [&](double rr) { return solve_background(rr, p).rho_hat; };
        CHECK(s.dU_dr ==
              doctest::Approx(oracles::central_diff(U_of, r, h)).epsilon(1e-8));
        CHECK(s.drho_dr ==
              doctest::Approx(oracles::central_diff(rho_of, r, h)).epsilon(1e-8));
    }
    // Far-field scaling of the speed derivative: U' * r^(2*gamma-1) stays bounded.
    double prev_scaled = 0.0;
    for (double r : {1e3, 1e4, 1e5, 1e6}) {
        const auto s = solve_background(r, p);
        const double scaled = s.dU_dr * std::pow(r, 2.0 * 1.4 - 1.0);
        CHECK(scaled > 0.0);
        CHECK(scaled < 10.0);
        if (prev_scaled > 0.0) CHECK(scaled == doctest::Approx(prev_scaled).epsilon(0.3));
        prev_scaled = scaled;
    }
}

TEST_CASE("linearization coefficients: entrance value, signs, limits, FD cross-check") {
    const GasParams p = default_params();

    // Direct substitution of the entrance state: P1 = c0^2 / (q0^2 - c0^2)
    // with c0^2 = 0.112 exactly at gamma = 1.4, q0 = 1.2.
    const auto entrance = solve_background(1.0, p);
    CHECK(entrance.P1 == doctest::Approx(0.112 / (1.44 - 0.112)).epsilon(1e-14));

    const auto radii = log_spaced_radii(1e6, 120);
    const auto table = background_table(radii, p);
    for (const auto& s : table) {
        CHECK(s.P1 > 0.0);
        CHECK(s.dP1_dr < 0.0);
        CHECK(s.P2 > 0.0);
    }
    // P2 -> 2(gamma-1) at the vacuum-limit rate.
    const auto far = solve_background(1e6, p);
    CHECK(std::abs(far.P2 - 0.8) * std::pow(1e6, 0.8) < 1.0);
    for (const auto& s : table)
        if (s.r >= 1e2)
            CHECK(std::abs(s.P2 - 0.8) * std::pow(s.r, 0.8) < 1.0);

    // Mandatory finite-difference cross-check of both closed forms.
    for (double r : {1.5, 3.0, 10.0, 100.0, 1e3, 1e5}) {
        const auto s = solve_background(r, p);
        const double h = 1e-4 * r;
        auto P1_of = [&](double rr) { return solve_background(rr, p).P1; };
        auto P2_of = [&](double rr) { return solve_background(rr, p).P2; };
        const double fd1 = oracles::central_diff(P1_of, r, h);
        const double fd2 = oracles::central_diff(P2_of, r, h);
        CHECK(s.dP1_dr == doctest::Approx(fd1).epsilon(1e-6));
        CHECK(s.dP2_dr == doctest::Approx(fd2).epsilon(1e-6));
    }
}

TEST_CASE("background power-law slopes") {
    const GasParams p = default_params();
    const auto radii = log_spaced_radii(1e6, 200);
    const auto table = background_table(radii, p);
    std::vector<double> rho, c2;
    for (const auto& s : table) {
        rho.push_back(s.rho_hat);
        c2.push_back(s.c2);
    }
    const auto rho_fit = decay_fit(radii, rho, 1e2, 1e4, "rho");
    CHECK(rho_fit.slope == doctest::Approx(-2.0).epsilon(0.025));
    const auto c2_fit = decay_fit(radii, c2, 1e2, 1e4, "c2");
    CHECK(c2_fit.slope == doctest::Approx(2.0 * (1.0 - 1.4)).epsilon(0.0625));
}

TEST_CASE("perturbed entrance density") {
    const GasParams p = default_params();
    const BumpProfile Phi0{0.5 * p.phi0, 0.22 * p.phi0, 1.0};
    const BumpProfile Phi1{0.5 * p.phi0, 0.22 * p.phi0, 1.0};

    SUBCASE("zero amplitude reduces to the entrance density") {
        for (double phi : {0.0, 0.1, 0.3, p.phi0})
            CHECK(initial_density_profile(phi, 0.0, Phi0, Phi1, p) ==
                  doctest::Approx(p.rho0).epsilon(1e-14));
    }
    SUBCASE("outside the support the perturbation vanishes") {
        const double phi = 0.05 * p.phi0;  // below center - width
        CHECK(initial_density_profile(phi, 1e-3, Phi0, Phi1, p) ==
              doctest::Approx(p.rho0).epsilon(1e-14));
    }
    SUBCASE("term-by-term arithmetic oracle inside the support") {
        const double eps = 1e-3;
        const double phi = 0.5 * p.phi0;
        const double g = 1.4;
        const double f1 = Phi1(phi);
        const double d0 = Phi0.d1(phi);
        const double brace = g / (g - 1.0) * std::pow(p.rho0, g - 1.0) -
                             0.5 * (2.0 * p.q0 * eps * f1 + eps * eps * f1 * f1 +
                                    eps * eps * d0 * d0);
        const double expected = std::pow((g - 1.0) / g, 2.5) * std::pow(brace, 2.5);
        CHECK(initial_density_profile(phi, eps, Phi0, Phi1, p) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("a large amplitude empties the brace") {
        CHECK_THROWS_AS(initial_density_profile(0.5 * p.phi0, 0.8, Phi0, Phi1, p),
                        CavitationError);
    }
}
