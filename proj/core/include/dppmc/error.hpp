#pragma once

#include <stdexcept>
#include <string>

namespace dppmc {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter lies outside its mathematical domain (e.g. Jacobi alpha <= -1).
class DomainError : public Error {
public:
    using Error::Error;
};

// An index or degree exceeds what a table or cache covers.
class RangeError : public Error {
public:
    using Error::Error;
};

// Malformed configuration or CLI input.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Floating-point trouble: failed factorisation, non-finite values, degenerate points.
class NumericalError : public Error {
public:
    using Error::Error;
};

// The rejection envelope was exceeded at a proposal; the sampler would no longer be exact.
class BoundViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A chain step used up its rejection budget.
class BoundTooTight : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace dppmc
