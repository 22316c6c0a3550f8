#pragma once

#include <stdexcept>
#include <string>

namespace wulffsym {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A brute-force evaluator was asked for a size beyond its cost guard.
class CostError : public Error {
public:
    using Error::Error;
};

/// An iterative method failed, or a quadrature produced a non-finite value.
class NumericError : public Error {
public:
    using Error::Error;
};

/// The requested combination of family and dimension is not implemented.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// A level set with vanishing gradient was encountered.
class DegenerateLevelError : public Error {
public:
    using Error::Error;
};

/// User-supplied data violates a documented precondition.
class InputError : public Error {
public:
    using Error::Error;
};

/// Computed data contradicts a structural assumption (e.g. quasi-convexity).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Experiment configuration could not be parsed or validated.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace wulffsym
