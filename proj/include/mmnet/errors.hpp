#pragma once

#include <stdexcept>
#include <string>

namespace mmnet {

/// Thrown when an argument violates a documented precondition.
class InvalidParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a nearest-point query is made on an empty pattern.
class EmptyPatternError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a series, continued fraction, or quadrature fails to reach
/// the requested accuracy. Carries the error estimate achieved so far.
class NumericalFailureError : public std::runtime_error {
public:
    NumericalFailureError(const std::string& what, double achieved_error,
                          long iterations)
        : std::runtime_error(what),
          achieved_error(achieved_error),
          iterations(iterations) {}

    double achieved_error;
    long iterations;
};

/// Thrown when a SIR sample is infinite or undefined (no interferer).
/// Callers treat this as a rejected sample and redraw.
class InfiniteSirError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when the rejected-sample rate of a campaign exceeds the budget,
/// which indicates the sampling window is too small for the configuration.
class WindowTooSmallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mmnet
