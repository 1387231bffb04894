#pragma once

#include <stdexcept>
#include <string>

namespace resdyn {

// Configuration / input problems. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures. CLI exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation requested inside the guard band around the light cone, where the
// closed forms diverge logarithmically (or too close for the oracle's tail
// acceleration to resolve).
struct LightConeError : NumericalError {
    using NumericalError::NumericalError;
};

// Field or tensor evaluation at (or numerically on top of) a source point.
struct SingularityError : NumericalError {
    using NumericalError::NumericalError;
};

// A finite-difference stencil straddles a light-cone boundary or hits a
// singular/guarded point.
struct StencilError : NumericalError {
    using NumericalError::NumericalError;
};

// Quadrature did not reach its target accuracy, or the two independent
// integration paths disagree. Carries the best available value.
struct ConvergenceError : NumericalError {
    double best_estimate;
    double est_error;
    ConvergenceError(const std::string& msg, double best, double est)
        : NumericalError(msg), best_estimate(best), est_error(est) {}
};

}  // namespace resdyn
