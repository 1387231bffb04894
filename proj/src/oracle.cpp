#include "resdyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "resdyn/errors.hpp"

namespace resdyn {

namespace {

constexpr double kPi = 3.141592653589793238;

struct GLNode {
    long double x, w;
};

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr GLNode kGL16[16] = {
    {-0.9894009349916499326L, 0.027152459411754094852L},
    {-0.94457502307323257608L, 0.062253523938647892863L},
    {-0.86563120238783174388L, 0.09515851168249278481L},
    {-0.7554044083550030339L, 0.12462897125553387205L},
    {-0.61787624440264374845L, 0.14959598881657673208L},
    {-0.45801677765722738634L, 0.16915651939500253819L},
    {-0.28160355077925891323L, 0.18260341504492358887L},
    {-0.095012509837637440185L, 0.18945061045506849629L},
    {0.095012509837637440185L, 0.18945061045506849629L},
    {0.28160355077925891323L, 0.18260341504492358887L},
    {0.45801677765722738634L, 0.16915651939500253819L},
    {0.61787624440264374845L, 0.14959598881657673208L},
    {0.7554044083550030339L, 0.12462897125553387205L},
    {0.86563120238783174388L, 0.09515851168249278481L},
    {0.94457502307323257608L, 0.062253523938647892863L},
    {0.9894009349916499326L, 0.027152459411754094852L},
};

template <class F>
double gauss_panel(const F& f, double a, double b) {
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (const auto& n : kGL16)
        acc += static_cast<double>(n.w) * f(m + h * static_cast<double>(n.x));
    return h * acc;
}

// Composite Gauss with panels sized to ~ 0.8 half-periods of the fastest
// oscillation present.
template <class F>
double composite(const F& f, double a, double b, double max_freq) {
    if (!(b > a)) return 0.0;
    const double span = b - a;
    double n_est = std::ceil(span * std::max(max_freq, 1e-30) / kPi * 1.2);
    if (n_est > 4e7)
        throw ConvergenceError("composite quadrature: panel count exceeds safety cap", 0.0, 0.0);
    const int n = std::max(4, static_cast<int>(n_est));
    const double h = span / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += gauss_panel(f, a + i * h, a + (i + 1) * h);
    return acc;
}

double sinc(double x) { return std::fabs(x) < 1e-6 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// (1 - cos(d*t))/d without the spurious pole: d t^2/2 * sinc^2(d t / 2).
double one_minus_cos_over(double d, double t) {
    const double s = sinc(0.5 * d * t);
    return 0.5 * d * t * t * s * s;
}

// (e^{-eta d} - 1)/d, series-stable below the excision halfwidth.
double expm1_over(double eta, double d, double halfwidth) {
    if (std::fabs(d) < halfwidth) {
        const double ed = eta * d;
        return -eta * (1.0 - 0.5 * ed + ed * ed / 6.0);
    }
    return std::expm1(-eta * d) / d;
}

// Alternating-series (Euler-transform) acceleration; returns the accelerated
// sum and a remainder-scale error estimate.
detail::QuadResult euler_sum(const std::vector<double>& terms) {
    std::vector<double> wksp(terms.size() + 1, 0.0);
    double total = 0.0;
    int nterm = 0;
    for (size_t j = 0; j < terms.size(); ++j) {
        const double t = terms[j];
        if (j == 0) {
            nterm = 1;
            wksp[0] = t;
            total = 0.5 * t;
            continue;
        }
        double tmp = wksp[0];
        wksp[0] = t;
        for (int i = 1; i < nterm; ++i) {
            const double dum = wksp[i];
            wksp[i] = 0.5 * (wksp[i - 1] + tmp);
            tmp = dum;
        }
        wksp[nterm] = 0.5 * (wksp[nterm - 1] + tmp);
        if (std::fabs(wksp[nterm]) <= std::fabs(wksp[nterm - 1])) {
            total += 0.5 * wksp[nterm];
            ++nterm;
        } else {
            total += wksp[nterm];
        }
    }
    const double err = nterm >= 1 ? std::fabs(wksp[nterm - 1]) : std::fabs(total);
    return {total, err};
}

// Neville extrapolation of path-B values to eta -> 0; the error estimate is
// the spread of the last two extrapolation levels (empirically conservative).
detail::QuadResult richardson(const std::vector<double>& etas, std::vector<double> vals) {
    const int n = static_cast<int>(etas.size());
    if (n == 1) return {vals[0], std::fabs(vals[0])};
    double prev = vals[0];
    for (int lev = 1; lev < n; ++lev) {
        for (int i = 0; i < n - lev; ++i)
            vals[i] += (vals[i] - vals[i + 1]) * etas[i] / (etas[i + lev] - etas[i]);
        if (lev == n - 2) prev = vals[0];
    }
    return {vals[0], std::fabs(vals[0] - (n >= 2 ? prev : vals[0]))};
}

// Wavenumber beyond which e^{-eta k} k^p stays under abs_tol.
double damped_cutoff(double eta, int p, double abs_tol) {
    double K = 10.0 / eta;
    for (int i = 0; i < 200; ++i) {
        const double v = std::exp(-eta * K) * std::pow(std::max(K, 1.0), p);
        if (v < abs_tol) break;
        K *= 1.25;
    }
    return K;
}

struct PathBContext {
    const QuadratureSettings& st;
    double scale;  // characteristic magnitude for tolerance floors
};

// Cross-check of path A against the damped path B; throws on disagreement.
void check_agreement(const char* who, detail::QuadResult a, detail::QuadResult b,
                     const PathBContext& ctx) {
    const double tol =
        10.0 * (a.est_error + b.est_error) + ctx.st.target_rel_error * ctx.scale;
    if (std::fabs(a.value - b.value) > tol)
        throw ConvergenceError(std::string(who) +
                                   ": independent integration paths disagree beyond combined "
                                   "error",
                               a.value, a.est_error + b.est_error);
}

void check_converged(const char* who, detail::QuadResult a, const PathBContext& ctx) {
    const double tol = ctx.st.target_rel_error * std::max(std::fabs(a.value), 0.1 * ctx.scale);
    if (a.est_error > tol)
        throw ConvergenceError(std::string(who) + ": estimated error above target",
                               a.value, a.est_error);
}

}  // namespace

QuadratureSettings QuadratureSettings::defaults_for(double k0) {
    QuadratureSettings st;
    st.pole_excision_halfwidth = 1e-3 * k0;
    st.k_max = 400.0 * k0;
    st.convergence_factor_eta = {0.02 / k0, 0.01 / k0, 0.005 / k0};
    st.period_partitions = 64;
    st.target_rel_error = 1e-6;
    return st;
}

void QuadratureSettings::validate(double k0) const {
    if (!(pole_excision_halfwidth > 0.0))
        throw ConfigError("quadrature.pole_excision_halfwidth must be > 0");
    if (!(k_max > 100.0 * k0)) throw ConfigError("quadrature.k_max must exceed 100 * k0");
    if (!(period_partitions >= 8))
        throw ConfigError("quadrature.period_partitions must be >= 8");
    if (!(target_rel_error >= 1e-6))
        throw ConfigError("quadrature.target_rel_error must be >= 1e-6");
    for (double e : convergence_factor_eta)
        if (!(e > 0.0)) throw ConfigError("quadrature.convergence_factor_eta entries must be > 0");
}

namespace detail {

double i1_head_integrand(double k, double R, double k0) {
    // [sin(kR) - sin(k0 R)]/(k - k0) + sin(kR)/(k + k0); the subtracted pole
    // piece integrates to zero over the symmetric window [0, 2 k0].
    const double d = k - k0;
    return R * std::cos(0.5 * (k + k0) * R) * sinc(0.5 * d * R) + std::sin(k * R) / (k + k0);
}

double i2_head_integrand(double k, double R, double k0, double t) {
    // [sin(kR) cos((k-k0)t) - sin(k0 R)]/(k - k0) + sin(kR) cos((k+k0)t)/(k + k0)
    const double d = k - k0;
    double reg = std::cos(d * t) * R * std::cos(0.5 * (k + k0) * R) * sinc(0.5 * d * R);
    reg -= std::sin(k0 * R) * t * sinc(0.5 * d * t) * std::sin(0.5 * d * t);
    reg += std::sin(k * R) * std::cos((k + k0) * t) / (k + k0);
    return reg;
}

QuadResult tail_tone(int p, double a, double phi, double pole, double k_start, int n_half,
                     double k_max) {
    if (a < 0.0) {
        const QuadResult r = tail_tone(p, -a, -phi, pole, k_start, n_half, k_max);
        return {-r.value, r.est_error};
    }
    if (a == 0.0)
        throw ConvergenceError("tail_tone: degenerate zero-frequency tone", 0.0, 0.0);

    const auto f = [=](double k) {
        return std::pow(k, p) * std::sin(a * k + phi) / (k - pole);
    };

    // first sign change of sin(a k + phi) at k >= k_start
    long m0 = static_cast<long>(std::ceil((a * k_start + phi) / kPi));
    double k_first = (m0 * kPi - phi) / a;
    if (k_first < k_start * (1.0 + 1e-14)) {
        ++m0;
        k_first = (m0 * kPi - phi) / a;
    }

    const double head = composite(f, k_start, std::min(k_first, k_max), a);
    std::vector<double> terms;
    terms.reserve(n_half);
    double klo = k_first;
    for (int j = 0; j < n_half; ++j) {
        const double khi = ((m0 + j + 1) * kPi - phi) / a;
        if (khi > k_max) break;
        terms.push_back(composite(f, klo, khi, a));
        klo = khi;
    }
    if (terms.size() < 8)
        throw ConvergenceError(
            "tail_tone: fewer than 8 half-periods below k_max (tone too slow: light-cone "
            "proximity or k_max too small)",
            head, std::fabs(head));
    const QuadResult accel = euler_sum(terms);
    return {head + accel.value, accel.est_error};
}

QuadResult integral_I1_detailed(double R, double k0, const QuadratureSettings& st) {
    if (!(R > 0.0) || !(k0 > 0.0)) throw std::domain_error("integral_I1: R > 0 and k0 > 0 required");
    st.validate(k0);

    const double head =
        composite([&](double k) { return i1_head_integrand(k, R, k0); }, 0.0, 2.0 * k0, R);
    const QuadResult t1 = tail_tone(0, R, 0.0, +k0, 2.0 * k0, st.period_partitions, st.k_max);
    const QuadResult t2 = tail_tone(0, R, 0.0, -k0, 2.0 * k0, st.period_partitions, st.k_max);
    QuadResult a{head + t1.value + t2.value,
                 t1.est_error + t2.est_error + 1e-13 * kPi +
                     50.0 * 2.2e-16 * (std::fabs(head) + std::fabs(t1.value) + std::fabs(t2.value))};

    const PathBContext ctx{st, kPi};
    check_converged("integral_I1", a, ctx);

    if (!st.convergence_factor_eta.empty()) {
        std::vector<double> vals;
        for (const double eta : st.convergence_factor_eta) {
            const auto f_head = [&](double k) {
                const double d = k - k0;
                double reg = std::exp(-eta * k) * R * std::cos(0.5 * (k + k0) * R) *
                             sinc(0.5 * d * R);
                reg += std::sin(k0 * R) * std::exp(-eta * k0) *
                       expm1_over(eta, d, st.pole_excision_halfwidth);
                reg += std::exp(-eta * k) * std::sin(k * R) / (k + k0);
                return reg;
            };
            const double headb = composite(f_head, 0.0, 2.0 * k0, R);
            const double cut = damped_cutoff(eta, 0, 1e-10);
            const auto f_tail = [&](double k) {
                return std::exp(-eta * k) * std::sin(k * R) *
                       (1.0 / (k - k0) + 1.0 / (k + k0));
            };
            vals.push_back(headb + composite(f_tail, 2.0 * k0, cut, R));
        }
        const QuadResult b = richardson(st.convergence_factor_eta, vals);
        check_agreement("integral_I1", a, b, ctx);
    }
    return a;
}

QuadResult integral_I2_detailed(double R, double k0, double t, const QuadratureSettings& st) {
    if (!(R > 0.0) || !(k0 > 0.0) || !(t >= 0.0))
        throw std::domain_error("integral_I2: R > 0, k0 > 0, t >= 0 required");
    st.validate(k0);
    if (std::fabs(R - t) * (st.k_max - 2.0 * k0) < 8.0 * kPi)
        throw LightConeError("integral_I2: t too close to R/c for the tail acceleration");

    const double head = composite([&](double k) { return i2_head_integrand(k, R, k0, t); }, 0.0,
                                  2.0 * k0, R + t);
    double value = head;
    double err = 0.0;
    double magsum = std::fabs(head);
    const struct {
        double a, phi, pole;
    } tones[4] = {{R + t, -k0 * t, +k0},
                  {R - t, +k0 * t, +k0},
                  {R + t, +k0 * t, -k0},
                  {R - t, -k0 * t, -k0}};
    for (const auto& tone : tones) {
        const QuadResult r =
            tail_tone(0, tone.a, tone.phi, tone.pole, 2.0 * k0, st.period_partitions, st.k_max);
        value += 0.5 * r.value;
        err += 0.5 * r.est_error;
        magsum += 0.5 * std::fabs(r.value);
    }
    QuadResult a{value, err + 1e-13 * kPi + 50.0 * 2.2e-16 * magsum};

    const PathBContext ctx{st, kPi};
    check_converged("integral_I2", a, ctx);

    if (!st.convergence_factor_eta.empty()) {
        std::vector<double> vals;
        for (const double eta : st.convergence_factor_eta) {
            const auto f_head = [&](double k) {
                const double d = k - k0;
                double reg = std::exp(-eta * k) * std::cos(d * t) * R *
                             std::cos(0.5 * (k + k0) * R) * sinc(0.5 * d * R);
                reg -= std::exp(-eta * k) * std::sin(k0 * R) * t * sinc(0.5 * d * t) *
                       std::sin(0.5 * d * t);
                reg += std::sin(k0 * R) * std::exp(-eta * k0) *
                       expm1_over(eta, d, st.pole_excision_halfwidth);
                reg += std::exp(-eta * k) * std::sin(k * R) * std::cos((k + k0) * t) / (k + k0);
                return reg;
            };
            const double headb = composite(f_head, 0.0, 2.0 * k0, R + t);
            const double cut = damped_cutoff(eta, 0, 1e-10);
            const auto f_tail = [&](double k) {
                return std::exp(-eta * k) * std::sin(k * R) *
                       (std::cos((k - k0) * t) / (k - k0) + std::cos((k + k0) * t) / (k + k0));
            };
            vals.push_back(headb + composite(f_tail, 2.0 * k0, cut, R + t));
        }
        const QuadResult b = richardson(st.convergence_factor_eta, vals);
        check_agreement("integral_I2", a, b, ctx);
    }
    return a;
}

QuadResult delta_e_quadrature_detailed(double t, const AtomPairConfig& cfg, DickeParity parity,
                                       CouplingMode mode, const QuadratureSettings& st) {
    cfg.validate();
    if (!(t >= 0.0)) throw std::domain_error("delta_e_quadrature: t must be >= 0");
    const double k0 = cfg.k0;
    st.validate(k0);
    const Vec3 rv = cfg.Rvec();
    const double R = rv.norm();
    const Vec3 n = rv.normalized();
    const double P = cfg.mu_A.dot(cfg.mu_B);
    const double X = cfg.mu_A.dot(n) * cfg.mu_B.dot(n);
    const int s = parity_sign(parity);
    const double lam = coupling_lambda(mode);

    if (std::fabs(R - t) * (st.k_max - 2.0 * k0) < 8.0 * kPi)
        throw LightConeError("delta_e_quadrature: t too close to R/c for the tail acceleration");

    // dipole operator applied to sin(kR)/R under the integral
    const double c2 = (P - X) / R;
    const double c1 = (P - 3.0 * X) / (R * R);
    const double c0 = -(P - 3.0 * X) / (R * R * R);
    const auto radial = [=](double k) {
        return c2 * k * k * std::sin(k * R) + c1 * k * std::cos(k * R) + c0 * std::sin(k * R);
    };
    const auto kernel = [=](double k) {
        return one_minus_cos_over(k - k0, t) + lam * lam * one_minus_cos_over(k + k0, t);
    };

    // characteristic magnitude: the stationary contraction, floored by a
    // crude envelope so degenerate geometries keep a sane scale
    const double u = k0 * R;
    const double near = (std::cos(u) + u * std::sin(u)) / (R * R * R);
    const double far = k0 * k0 * std::cos(u) / R;
    const double stationary = P * (near - far) + X * (-3.0 * near + far);
    const double envelope =
        (std::fabs(P) + 3.0 * std::fabs(X)) * (k0 * k0 / R + k0 / (R * R) + 1.0 / (R * R * R));
    const double scale = std::max(std::fabs(stationary), 1e-3 * envelope);

    const double head =
        composite([&](double k) { return kernel(k) * radial(k); }, 0.0, 2.0 * k0, R + t);
    double total = head;
    double err = 0.0;
    double magsum = std::fabs(head);

    struct Family {
        double pole, weight, sgn_t;
    };
    std::vector<Family> fams{{+k0, 1.0, +1.0}};
    if (lam != 0.0) fams.push_back({-k0, lam * lam, -1.0});
    const struct {
        int p;
        double base_phi;
        double coeff;
    } parts[3] = {{2, 0.0, c2}, {1, 0.5 * kPi, c1}, {0, 0.0, c0}};

    for (const auto& fam : fams) {
        for (const auto& part : parts) {
            if (part.coeff == 0.0) continue;
            // "1" piece of the kernel
            QuadResult r = tail_tone(part.p, R, part.base_phi, fam.pole, 2.0 * k0,
                                     st.period_partitions, st.k_max);
            total += fam.weight * part.coeff * r.value;
            err += std::fabs(fam.weight * part.coeff) * r.est_error;
            magsum += std::fabs(fam.weight * part.coeff * r.value);
            // -cos((k -+ k0) t) piece, split by product-to-sum
            const double pairs[2][2] = {{R + t, part.base_phi - fam.sgn_t * k0 * t},
                                        {R - t, part.base_phi + fam.sgn_t * k0 * t}};
            for (const auto& pr : pairs) {
                r = tail_tone(part.p, pr[0], pr[1], fam.pole, 2.0 * k0, st.period_partitions,
                              st.k_max);
                total += -0.5 * fam.weight * part.coeff * r.value;
                err += 0.5 * std::fabs(fam.weight * part.coeff) * r.est_error;
                magsum += 0.5 * std::fabs(fam.weight * part.coeff * r.value);
            }
        }
    }

    QuadResult a{-s / kPi * total,
                 (err + 1e-13 * scale + 50.0 * 2.2e-16 * magsum) / kPi};

    const PathBContext ctx{st, scale};
    check_converged("delta_e_quadrature", a, ctx);

    if (!st.convergence_factor_eta.empty()) {
        const double env2 = std::fabs(c2) + std::fabs(c1) + std::fabs(c0);
        std::vector<double> vals;
        for (const double eta : st.convergence_factor_eta) {
            const double cut = damped_cutoff(eta, 2, 1e-9 * std::max(scale, 1e-3 * env2));
            const double v = composite(
                [&](double k) { return std::exp(-eta * k) * kernel(k) * radial(k); }, 0.0, cut,
                R + t + k0);
            vals.push_back(-s / kPi * v);
        }
        const QuadResult b = richardson(st.convergence_factor_eta, vals);
        check_agreement("delta_e_quadrature", a, b, ctx);
    }
    return a;
}

}  // namespace detail

double integral_I1(double R, double k0, const QuadratureSettings& settings) {
    return detail::integral_I1_detailed(R, k0, settings).value;
}

double integral_I2(double R, double k0, double t, const QuadratureSettings& settings) {
    return detail::integral_I2_detailed(R, k0, t, settings).value;
}

double delta_e_quadrature(double t, const AtomPairConfig& cfg, DickeParity parity,
                          CouplingMode mode, const QuadratureSettings& settings) {
    return detail::delta_e_quadrature_detailed(t, cfg, parity, mode, settings).value;
}

}  // namespace resdyn
