#pragma once

namespace refspec {

// Arbitrary-precision reference values of the sine and cosine integrals,
// computed at 768-bit precision (series for x <= 60, asymptotic expansion
// beyond). Accurate to well below 1e-20 in double terms across
// [1e-300, 1e6] — far tighter than any tolerance used in the tests.
struct SiCi {
    double si;  // Si(x) = integral_0^x sin(u)/u du
    double ci;  // Ci(x) = gamma + ln(x) + integral_0^x (cos(u) - 1)/u du
};

SiCi reference_si_ci(double x);  // requires x > 0

}  // namespace refspec
