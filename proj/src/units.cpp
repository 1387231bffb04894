#include "resdyn/units.hpp"

#include <cmath>

#include "resdyn/errors.hpp"
#include "resdyn/resonance.hpp"

namespace resdyn {

double si_force_estimate(const SIEstimateInput& input, DickeParity parity) {
    if (!(input.mu_C_m > 0.0) || !(input.k0_per_m > 0.0) || !(input.R_m > 0.0) ||
        !std::isfinite(input.mu_C_m) || !std::isfinite(input.k0_per_m) ||
        !std::isfinite(input.R_m))
        throw ConfigError("si_force_estimate: mu, k0 and R must be positive and finite");

    const double mu_g = input.mu_C_m * units::statC_cm_per_C_m;
    const double k0_g = input.k0_per_m * units::per_cm_per_per_m;
    const double R_g = input.R_m * units::cm_per_m;

    // both dipoles perpendicular to the separation axis
    const auto energy_at = [&](double R) {
        AtomPairConfig cfg;
        cfg.r_A = Vec3{0.0, 0.0, 0.0};
        cfg.r_B = Vec3{0.0, 0.0, R};
        cfg.mu_A = Vec3{mu_g, 0.0, 0.0};
        cfg.mu_B = Vec3{mu_g, 0.0, 0.0};
        cfg.k0 = k0_g;
        return delta_e_stationary(cfg, parity);
    };

    const double h = 1e-6 * R_g;
    const double force_dyn = -(energy_at(R_g + h) - energy_at(R_g - h)) / (2.0 * h);
    return force_dyn * units::newton_per_dyn;
}

}  // namespace resdyn
