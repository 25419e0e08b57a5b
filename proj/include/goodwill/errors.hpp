#pragma once

#include <stdexcept>
#include <string>

namespace goodwill {

// Base class for all solver-level failures so callers can catch the family.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The well-posedness condition int_0^1 R(a) D(a) da < 1 is violated.
struct StabilityViolation : SolverError {
    using SolverError::SolverError;
};

// A control entry is negative where a nonnegative one is required.
struct NegativeControl : SolverError {
    using SolverError::SolverError;
};

// A control violates its box constraint [0, I].
struct InadmissibleControl : SolverError {
    using SolverError::SolverError;
};

// Time step exceeds the upwind stability bound dt <= da.
struct CflViolation : SolverError {
    using SolverError::SolverError;
};

// State hit the positivity floor while gamma < 1 (singular revenue density).
struct SingularState : SolverError {
    using SolverError::SolverError;
};

// Volterra trapezoid step too coarse: 1 - (dt/2) K(0) <= 0.
struct SingularStep : SolverError {
    using SolverError::SolverError;
};

// A state field entry is negative where the objective needs G >= 0.
struct NegativeState : SolverError {
    using SolverError::SolverError;
};

// Scenario configuration is malformed or inconsistent.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The sweep iteration exhausted max_iters without meeting the tolerance.
struct NoConvergence : SolverError {
    using SolverError::SolverError;
};

} // namespace goodwill
