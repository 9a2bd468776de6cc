#pragma once

#include <stdexcept>
#include <string>

namespace cliffcalc {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : Error {
    using Error::Error;
};

// Evaluation outside the declared domain (singular sphere, bad angle, ...).
struct DomainError : Error {
    using Error::Error;
};

struct SingularOperatorError : Error {
    double smallest_singular_value;
    SingularOperatorError(const std::string& what, double sigma_min)
        : Error(what), smallest_singular_value(sigma_min) {}
};

struct SingularKernelError : Error {
    using Error::Error;
};

struct QuadratureDivergedError : Error {
    double last_delta;
    QuadratureDivergedError(const std::string& what, double delta)
        : Error(what), last_delta(delta) {}
};

// Function/operator pair violates the class requirements of the requested calculus.
struct CalcClassError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct NotBndError : Error {
    using Error::Error;
};

struct NotRegularizableError : Error {
    using Error::Error;
};

struct InjectivityFailureError : Error {
    double injectivity_margin;
    InjectivityFailureError(const std::string& what, double margin)
        : Error(what), injectivity_margin(margin) {}
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace cliffcalc
