#include "resdyn/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace resdyn {

namespace {

constexpr double kGamma = 0.57721566490153286;  // Euler-Mascheroni
constexpr double kPiHalf = 1.5707963267948966;
constexpr long double kEpsLd = 1.0842021724855044e-19L;  // long double ulp
constexpr double kSeriesCfSwitch = 16.0;
constexpr double kCfAsymSwitch = 40.0;

}  // namespace

namespace detail {

// Maclaurin series in long double. Cancellation costs ~eps * max_term, which
// stays below ~7e-13 for x < 16.
SiCiPair specfun_series(double xd) {
    const long double x = xd;
    const long double x2 = x * x;

    long double term = x;  // x^{2n+1}/(2n+1)!
    long double si_sum = x;
    long double si_max = fabsl(x);
    long double cterm = 1.0L;  // x^{2n}/(2n)!
    long double cin_sum = 0.0L;
    long double cin_max = 0.0L;
    int n = 0;
    while (n < 200) {
        ++n;
        term *= -x2 / ((2.0L * n) * (2.0L * n + 1.0L));
        cterm *= -x2 / ((2.0L * n - 1.0L) * (2.0L * n));
        const long double si_new = term / (2.0L * n + 1.0L);
        const long double cin_new = -cterm / (2.0L * n);
        si_sum += si_new;
        cin_sum += cin_new;
        si_max = std::max(si_max, fabsl(si_new));
        cin_max = std::max(cin_max, fabsl(cin_new));
        if (fabsl(term) < 1e-25L * (fabsl(si_sum) + 1e-30L)) break;
    }
    const double si_v = static_cast<double>(si_sum);
    const double ci_v =
        xd > 0.0 ? static_cast<double>(kGamma + logl(x) - cin_sum) : 0.0;
    const double err =
        static_cast<double>(kEpsLd * (si_max + cin_max) * (n + 2)) +
        4e-16 * (std::fabs(si_v) + std::fabs(ci_v) + 1.0);
    return {si_v, ci_v, err};
}

// E1(ix) = e^{-ix} * CF by modified Lentz; E1(ix) = -Ci(x) + i si(x).
SiCiPair specfun_cf(double xd) {
    using C = std::complex<long double>;
    const long double x = xd;
    const C one(1.0L, 0.0L);
    const C z(0.0L, x);

    C b = z + 1.0L;
    C c(1e300L, 0.0L);
    C d = one / b;
    C h = d;
    long double dev = 1.0L;
    int i = 1;
    for (; i < 400; ++i) {
        const long double a = -static_cast<long double>(i) * i;
        b += 2.0L;
        d = one / (a * d + b);
        c = b + a / c;
        const C dl = c * d;
        h *= dl;
        dev = std::abs(dl - one);
        if (dev < 1e-19L) break;
    }
    const C e1 = C(cosl(x), -sinl(x)) * h;
    const double ci_v = -static_cast<double>(e1.real());
    const double si_shifted = static_cast<double>(e1.imag());
    const double mag = static_cast<double>(std::abs(e1));
    const double err = (4.0 * static_cast<double>(dev) + (i + 8) * 2.2e-19) * mag +
                       2.3e-16 * (std::fabs(ci_v) + std::fabs(si_shifted) + mag);
    return {si_shifted + kPiHalf, ci_v, err};
}

// Si = pi/2 - f cos - g sin, Ci = f sin - g cos, with the divergent
// asymptotic series for f, g truncated at the smallest term.
SiCiPair specfun_asym(double xd) {
    const long double x = xd;
    const long double x2 = x * x;
    long double f = 0.0L, g = 0.0L;
    long double tf = 1.0L / x;   // (2m)!/x^{2m+1}
    long double tg = 1.0L / x2;  // (2m+1)!/x^{2m+2}
    long double omitted = 0.0L;
    for (int m = 0; m < 60; ++m) {
        f += tf;
        g += tg;
        const long double ntf = -tf * (2.0L * m + 1.0L) * (2.0L * m + 2.0L) / x2;
        const long double ntg = -tg * (2.0L * m + 2.0L) * (2.0L * m + 3.0L) / x2;
        omitted = fabsl(ntf) + fabsl(ntg);
        if (fabsl(ntf) >= fabsl(tf) || omitted < 1e-24L * (f + g)) break;
        tf = ntf;
        tg = ntg;
    }
    const double s = std::sin(xd);
    const double cc = std::cos(xd);
    const double fd = static_cast<double>(f);
    const double gd = static_cast<double>(g);
    const double si_v = kPiHalf - fd * cc - gd * s;
    const double ci_v = fd * s - gd * cc;
    const double err = static_cast<double>(omitted) + 1e-15 * (fd + gd) + 1e-18;
    return {si_v, ci_v, err};
}

}  // namespace detail

namespace {

detail::SiCiPair eval(double x) {
    if (x < kSeriesCfSwitch) return detail::specfun_series(x);
    if (x < kCfAsymSwitch) return detail::specfun_cf(x);
    return detail::specfun_asym(x);
}

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite argument");
}

}  // namespace

SpecialFunctionResult sin_integral(double x) {
    require_finite(x, "sin_integral");
    if (x < 0.0) throw std::domain_error("sin_integral: argument must be >= 0");
    if (x == 0.0) return {0.0, 0.0};
    const auto r = eval(x);
    return {r.unshifted_si, r.est_error};
}

SpecialFunctionResult cos_integral(double x) {
    require_finite(x, "cos_integral");
    if (x <= 0.0) throw std::domain_error("cos_integral: argument must be > 0");
    const auto r = eval(x);
    return {r.ci_val, r.est_error};
}

SpecialFunctionResult shifted_sin_integral(double x) {
    require_finite(x, "shifted_sin_integral");
    const double ax = std::fabs(x);
    double si_ax = 0.0;
    double err = 0.0;
    if (ax > 0.0) {
        const auto r = eval(ax);
        si_ax = r.unshifted_si;
        err = r.est_error;
    }
    const double si_x = std::copysign(si_ax, x);  // Si is odd
    return {si_x - kPiHalf, err + 2.3e-16};
}

}  // namespace resdyn
