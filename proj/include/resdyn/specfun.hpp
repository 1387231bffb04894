#pragma once

namespace resdyn {

struct SpecialFunctionResult {
    double value;
    double est_error;  // conservative absolute error bound
};

// Si(x) = integral_0^x sin(u)/u du.  Requires finite x >= 0.
SpecialFunctionResult sin_integral(double x);

// Ci(x) = gamma + ln x + integral_0^x (cos u - 1)/u du.  Requires finite x > 0.
SpecialFunctionResult cos_integral(double x);

// si(x) = Si(x) - pi/2, extended to negative x through the oddness of Si.
SpecialFunctionResult shifted_sin_integral(double x);

namespace detail {

// Stage evaluators, exposed so tests can verify crossover consistency.
// unshifted_si holds the unshifted Si.
struct SiCiPair {
    double unshifted_si;
    double ci_val;
    double est_error;
};

SiCiPair specfun_series(double x);  // Maclaurin series; used for x < 16
SiCiPair specfun_cf(double x);      // continued fraction for E1(ix); 16 <= x < 40
SiCiPair specfun_asym(double x);    // auxiliary f,g asymptotics; x >= 40

}  // namespace detail

}  // namespace resdyn
