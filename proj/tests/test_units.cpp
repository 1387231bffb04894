#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "resdyn/errors.hpp"
#include "resdyn/units.hpp"

using namespace resdyn;

TEST_CASE("conversion constants are the exact defined factors") {
    CHECK(units::statC_cm_per_C_m == 2.99792458e11);
    CHECK(units::cm_per_m == 100.0);
    CHECK(units::per_cm_per_per_m == 0.01);
    CHECK(units::cm3_per_m3 == 1e6);
    CHECK(units::c_cm_per_s == 2.99792458e10);
    CHECK(units::newton_per_dyn == 1e-5);
}

TEST_CASE("laboratory-scale force estimate matches the pinned reference") {
    // mu = 1e-29 C m, k0 = 1e7 1/m, R = 1 micron  =>  k0 R = 10
    const SIEstimateInput in{1e-29, 1e7, 1e-6, std::nullopt};
    const double f = si_force_estimate(in);
    CHECK(f == doctest::Approx(6.2283515379095167e-22).epsilon(1e-8));
    // order of magnitude: within a factor of 10 of 1e-21 N
    CHECK(f >= 1e-22);
    CHECK(f <= 1e-20);
}

TEST_CASE("force scales quadratically with the dipole moment") {
    const SIEstimateInput base{1e-29, 1e7, 1e-6, std::nullopt};
    const SIEstimateInput twice{2e-29, 1e7, 1e-6, std::nullopt};
    // exact: the dipole enters every term as an overall mu^2
    CHECK(si_force_estimate(twice) == 4.0 * si_force_estimate(base));
}

TEST_CASE("antisymmetric parity flips the sign exactly") {
    const SIEstimateInput in{1e-29, 1e7, 1e-6, std::nullopt};
    CHECK(si_force_estimate(in, DickeParity::Antisymmetric) ==
          -si_force_estimate(in, DickeParity::Symmetric));
}

TEST_CASE("static limit: near-zonal 3 mu^2 / R^4 repulsion and R^-4 scaling") {
    // k0 R = 1e-6: retardation is negligible
    const SIEstimateInput in{1e-29, 1.0, 1e-6, std::nullopt};
    const double mu_g = 1e-29 * units::statC_cm_per_C_m;
    const double R_g = 1e-6 * units::cm_per_m;
    const double analytic_N = 3.0 * mu_g * mu_g / std::pow(R_g, 4) * units::newton_per_dyn;
    const double f = si_force_estimate(in);
    CHECK(f == doctest::Approx(analytic_N).epsilon(1e-3));
    CHECK(f > 0.0);  // parallel dipoles side by side repel

    const SIEstimateInput far{1e-29, 1.0, 2e-6, std::nullopt};
    CHECK(si_force_estimate(in) / si_force_estimate(far) == doctest::Approx(16.0).epsilon(1e-3));
}

TEST_CASE("non-positive or non-finite inputs are rejected") {
    const SIEstimateInput good{1e-29, 1e7, 1e-6, std::nullopt};
    CHECK_NOTHROW((void)si_force_estimate(good));
    SIEstimateInput bad = good;
    bad.mu_C_m = 0.0;
    CHECK_THROWS_AS((void)si_force_estimate(bad), ConfigError);
    bad = good;
    bad.k0_per_m = -1e7;
    CHECK_THROWS_AS((void)si_force_estimate(bad), ConfigError);
    bad = good;
    bad.R_m = 0.0;
    CHECK_THROWS_AS((void)si_force_estimate(bad), ConfigError);
    bad = good;
    bad.R_m = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)si_force_estimate(bad), ConfigError);
    bad = good;
    bad.mu_C_m = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS((void)si_force_estimate(bad), ConfigError);
}
