#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "resdyn/tensor.hpp"
#include "resdyn/vec3.hpp"

namespace resdyn {

// Sign of the entangled one-excitation superposition:
// Symmetric (superradiant, s = +1) or Antisymmetric (subradiant, s = -1).
enum class DickeParity { Symmetric, Antisymmetric };

// Coupling switch: RWA keeps only rotating interaction terms (lambda = 0),
// Full includes the counterrotating ones (lambda = 1).
enum class CouplingMode { RWA, Full };

constexpr int parity_sign(DickeParity p) {
    return p == DickeParity::Symmetric ? +1 : -1;
}
constexpr double coupling_lambda(CouplingMode m) {
    return m == CouplingMode::Full ? 1.0 : 0.0;
}

// Geometry, dipole matrix elements and transition wavenumber of the pair.
// Natural units: c = 1, lengths in 1/k0 when k0 = 1; Gaussian cgs otherwise.
struct AtomPairConfig {
    Vec3 r_A, r_B;
    DipoleMoment mu_A, mu_B;
    double k0 = 1.0;

    Vec3 Rvec() const { return r_B - r_A; }
    double R() const { return Rvec().norm(); }
    void validate() const;  // throws ConfigError on violated invariants
};

// Time series of the rotating/counterrotating decomposition.
// total[i] = rwa[i] + cr[i] by construction.
struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> rwa;
    std::vector<double> cr;
    std::vector<double> total;
    AtomPairConfig config;
    DickeParity parity = DickeParity::Symmetric;
    int skipped_in_band = 0;        // grid samples dropped by the cone guard
    bool lifetime_warning = false;  // t_end beyond 10% of the supplied lifetime
};

// Interaction energy at time t (c = 1, so the light cone sits at t = R).
// Full mode: exactly 0 for t < R, exactly the stationary value for t > R.
// RWA mode: the closed-form rotating-term contribution, nonzero on both sides.
// lightcone_epsilon <= 0 selects the default guard band 1e-9 * R; inside the
// band a LightConeError is thrown.
double delta_e(double t, const AtomPairConfig& cfg, DickeParity parity, CouplingMode mode,
               double lightcone_epsilon = 0.0);

// s * sum_lm (mu_A)_l (mu_B)_m V_lm(k0, R)
double delta_e_stationary(const AtomPairConfig& cfg, DickeParity parity);

// (rwa, cr) with cr defined as delta_e(Full) - delta_e(RWA), so the pair sums
// to the full result identically.
std::pair<double, double> decompose(double t, const AtomPairConfig& cfg, DickeParity parity,
                                    double lightcone_epsilon = 0.0);

EnergyTrace make_energy_trace(const AtomPairConfig& cfg, DickeParity parity, double t_start,
                              double t_end, int n_samples,
                              std::optional<double> lifetime_hint = std::nullopt,
                              double lightcone_epsilon = 0.0);

}  // namespace resdyn
