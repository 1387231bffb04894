#pragma once

#include <optional>

#include "resdyn/resonance.hpp"

namespace resdyn {

namespace units {
// SI -> Gaussian cgs
inline constexpr double statC_cm_per_C_m = 2.99792458e11;  // dipole moment
inline constexpr double cm_per_m = 100.0;
inline constexpr double per_cm_per_per_m = 0.01;  // wavenumber
inline constexpr double cm3_per_m3 = 1e6;         // polarizability volume
inline constexpr double c_cm_per_s = 2.99792458e10;
// Gaussian cgs -> SI
inline constexpr double newton_per_dyn = 1e-5;
}  // namespace units

// Laboratory-scale inputs for the force-magnitude estimate.
struct SIEstimateInput {
    double mu_C_m;    // transition dipole, C*m
    double k0_per_m;  // transition wavenumber, 1/m
    double R_m;       // interatomic distance, m
    std::optional<double> alpha_m3;  // probe polarizability volume, m^3
};

// Radial resonance force between the two atoms (dipoles perpendicular to the
// separation), F = -d(stationary energy)/dR by central difference, converted
// to newtons.
double si_force_estimate(const SIEstimateInput& input,
                         DickeParity parity = DickeParity::Symmetric);

}  // namespace resdyn
