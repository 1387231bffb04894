#pragma once

#include <vector>

#include "resdyn/resonance.hpp"

namespace resdyn {

// Controls for the principal-value oscillatory quadrature.
// All wavenumber-like fields are absolute (same units as k0).
struct QuadratureSettings {
    // Half-width of the band around the pole inside which series-stable forms
    // of the regularized integrand are used instead of raw difference
    // quotients. Must be > 0.
    double pole_excision_halfwidth = 1e-3;
    // Tail truncation wavenumber; must exceed 100 * k0.
    double k_max = 400.0;
    // Damping lengths for the independent e^{-eta k} convergence-factor path
    // (Richardson-extrapolated eta -> 0). Empty disables the cross-check.
    std::vector<double> convergence_factor_eta{0.02, 0.01, 0.005};
    // Number of half-period tail terms fed to the alternating-series
    // acceleration.
    int period_partitions = 64;
    // Requested relative accuracy; >= 1e-6.
    double target_rel_error = 1e-6;

    static QuadratureSettings defaults_for(double k0);
    void validate(double k0) const;  // throws ConfigError
};

// Principal value of  integral_0^inf dk sin(kR) [1/(k-k0) + 1/(k+k0)].
// Analytic value: pi * cos(k0 R).
double integral_I1(double R, double k0, const QuadratureSettings& settings);

// Principal value of the time-dependent companion
//   integral_0^inf dk sin(kR) [cos((k-k0)t)/(k-k0) + cos((k+k0)t)/(k+k0)],
// equal to pi * cos(k0 R) for t < R and 0 for t > R.
double integral_I2(double R, double k0, double t, const QuadratureSettings& settings);

// Direct quadrature of the raw frequency-integral form of the interaction
// energy (dipole operator applied analytically under the integral). Validates
// the closed forms in resonance.
double delta_e_quadrature(double t, const AtomPairConfig& cfg, DickeParity parity,
                          CouplingMode mode, const QuadratureSettings& settings);

namespace detail {

struct QuadResult {
    double value;
    double est_error;
};

// value + error estimate variants (the public functions return .value)
QuadResult integral_I1_detailed(double R, double k0, const QuadratureSettings& settings);
QuadResult integral_I2_detailed(double R, double k0, double t, const QuadratureSettings& settings);
QuadResult delta_e_quadrature_detailed(double t, const AtomPairConfig& cfg, DickeParity parity,
                                       CouplingMode mode, const QuadratureSettings& settings);

// Regularized principal-value head integrands; bounded across k = k0.
double i1_head_integrand(double k, double R, double k0);
double i2_head_integrand(double k, double R, double k0, double t);

// integral_{k_start}^{inf} k^p sin(a k + phi) / (k - pole) dk  (Abel sense),
// by half-period partition + alternating-series acceleration.
QuadResult tail_tone(int p, double a, double phi, double pole, double k_start, int n_half,
                     double k_max);

}  // namespace detail

}  // namespace resdyn
