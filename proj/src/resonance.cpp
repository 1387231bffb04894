#include "resdyn/resonance.hpp"

#include <cmath>
#include <stdexcept>

#include "resdyn/errors.hpp"
#include "resdyn/specfun.hpp"

namespace resdyn {

namespace {

constexpr double kTwoPi = 6.283185307179586476;

// Order-2 jet in the separation R: value, d/dR, d2/dR2. The dipole operator
// only needs two radial derivatives of the bracketed scalar functions.
struct Jet {
    double f, d1, d2;
};

Jet operator+(Jet a, Jet b) { return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2}; }
Jet operator-(Jet a, Jet b) { return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2}; }
Jet operator*(Jet a, Jet b) {
    return {a.f * b.f, a.d1 * b.f + a.f * b.d1, a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2};
}
Jet operator*(double c, Jet a) { return {c * a.f, c * a.d1, c * a.d2}; }

Jet jet_sin(double k0, double R) {
    const double u = k0 * R;
    return {std::sin(u), k0 * std::cos(u), -k0 * k0 * std::sin(u)};
}

Jet jet_cos(double k0, double R) {
    const double u = k0 * R;
    return {std::cos(u), -k0 * std::sin(u), -k0 * k0 * std::cos(u)};
}

Jet jet_inv_r(double R) { return {1.0 / R, -1.0 / (R * R), 2.0 / (R * R * R)}; }

// Ci(alpha + beta R) as a jet in R; the argument must be positive.
Jet jet_ci(double alpha, double beta, double R) {
    const double u = alpha + beta * R;
    const double cu = std::cos(u), su = std::sin(u);
    return {cos_integral(u).value, beta * cu / u, beta * beta * (-su / u - cu / (u * u))};
}

Jet jet_si(double alpha, double beta, double R) {
    const double u = alpha + beta * R;
    const double cu = std::cos(u), su = std::sin(u);
    return {shifted_sin_integral(u).value, beta * su / u, beta * beta * (cu / u - su / (u * u))};
}

// (mu_A)_l (mu_B)_m (-d_lm lap + grad_l grad_m) g(R), reduced to the two
// scalar invariants P = mu_A . mu_B and X = (mu_A . Rh)(mu_B . Rh).
double contract_operator(Jet g, double R, double P, double X) {
    const double iso = -g.d2 - g.d1 / R;
    const double axial = g.d2 - g.d1 / R;
    return P * iso + X * axial;
}

// Contraction of the potential tensor with the dipoles via the same P, X
// invariants.
double v_contracted(double k0, double R, double P, double X) {
    const double u = k0 * R;
    const double near = (std::cos(u) + u * std::sin(u)) / (R * R * R);
    const double far = k0 * k0 * std::cos(u) / R;
    return P * (near - far) + X * (-3.0 * near + far);
}

// Rotating-term closed form (the lambda-independent part of the interaction).
double rwa_closed(double t, double R, double k0, double P, double X, int s) {
    const Jet ci_R = jet_ci(0.0, k0, R);
    const Jet si_R = jet_si(0.0, k0, R);
    Jet g{};
    if (t < R) {
        const Jet C = 2.0 * ci_R - jet_ci(-k0 * t, k0, R) - jet_ci(k0 * t, k0, R);
        const Jet S = 2.0 * si_R - jet_si(-k0 * t, k0, R) - jet_si(k0 * t, k0, R);
        g = (jet_sin(k0, R) * C - jet_cos(k0, R) * S) * jet_inv_r(R);
        return s / kTwoPi * contract_operator(g, R, P, X);
    }
    // arguments k0(t-R) need d/dR = -k0
    const Jet C = 2.0 * ci_R - jet_ci(k0 * t, -k0, R) - jet_ci(k0 * t, k0, R);
    const Jet S = 2.0 * si_R + jet_si(k0 * t, -k0, R) - jet_si(k0 * t, k0, R);
    g = (jet_sin(k0, R) * C - jet_cos(k0, R) * S) * jet_inv_r(R);
    return s * v_contracted(k0, R, P, X) + s / kTwoPi * contract_operator(g, R, P, X);
}

struct Invariants {
    double R;
    double P;
    double X;
};

Invariants invariants_of(const AtomPairConfig& cfg) {
    const Vec3 rv = cfg.Rvec();
    const double R = rv.norm();
    const Vec3 n = rv.normalized();
    return {R, cfg.mu_A.dot(cfg.mu_B), cfg.mu_A.dot(n) * cfg.mu_B.dot(n)};
}

double cone_band(const AtomPairConfig& cfg, double lightcone_epsilon) {
    return lightcone_epsilon > 0.0 ? lightcone_epsilon : 1e-9 * cfg.R();
}

}  // namespace

void AtomPairConfig::validate() const {
    if (!r_A.finite() || !r_B.finite() || !mu_A.finite() || !mu_B.finite())
        throw ConfigError("atoms: positions and dipole moments must be finite");
    if (!std::isfinite(k0) || k0 <= 0.0) throw ConfigError("atoms.k0 must be finite and > 0");
    if (R() <= 0.0) throw ConfigError("atoms: |r_A - r_B| must be > 0");
}

double delta_e(double t, const AtomPairConfig& cfg, DickeParity parity, CouplingMode mode,
               double lightcone_epsilon) {
    cfg.validate();
    if (!std::isfinite(t) || t < 0.0) throw std::domain_error("delta_e: t must be finite and >= 0");
    const auto [R, P, X] = invariants_of(cfg);
    if (std::fabs(t - R) < cone_band(cfg, lightcone_epsilon))
        throw LightConeError("delta_e: t within the light-cone band around t = R/c");
    const int s = parity_sign(parity);
    if (mode == CouplingMode::Full) {
        if (t < R) return 0.0;
        return s * v_contracted(cfg.k0, R, P, X);
    }
    return rwa_closed(t, R, cfg.k0, P, X, s);
}

double delta_e_stationary(const AtomPairConfig& cfg, DickeParity parity) {
    cfg.validate();
    const auto [R, P, X] = invariants_of(cfg);
    return parity_sign(parity) * v_contracted(cfg.k0, R, P, X);
}

std::pair<double, double> decompose(double t, const AtomPairConfig& cfg, DickeParity parity,
                                    double lightcone_epsilon) {
    const double rwa = delta_e(t, cfg, parity, CouplingMode::RWA, lightcone_epsilon);
    const double full = delta_e(t, cfg, parity, CouplingMode::Full, lightcone_epsilon);
    return {rwa, full - rwa};
}

EnergyTrace make_energy_trace(const AtomPairConfig& cfg, DickeParity parity, double t_start,
                              double t_end, int n_samples, std::optional<double> lifetime_hint,
                              double lightcone_epsilon) {
    cfg.validate();
    if (!(n_samples >= 2)) throw ConfigError("time_grid.n_samples must be >= 2");
    if (!(t_start >= 0.0) || !(t_end > t_start))
        throw ConfigError("time_grid requires 0 <= t_start < t_end");

    EnergyTrace trace;
    trace.config = cfg;
    trace.parity = parity;
    const double R = cfg.R();
    const double band = cone_band(cfg, lightcone_epsilon);
    const double dt = (t_end - t_start) / (n_samples - 1);
    for (int i = 0; i < n_samples; ++i) {
        const double t = t_start + i * dt;
        if (std::fabs(t - R) < band) {
            ++trace.skipped_in_band;
            continue;
        }
        const auto [rwa, cr] = decompose(t, cfg, parity, lightcone_epsilon);
        trace.times.push_back(t);
        trace.rwa.push_back(rwa);
        trace.cr.push_back(cr);
        trace.total.push_back(rwa + cr);
    }
    if (lifetime_hint && t_end > 0.1 * *lifetime_hint) trace.lifetime_warning = true;
    return trace;
}

}  // namespace resdyn
