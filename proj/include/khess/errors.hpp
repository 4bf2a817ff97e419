// errors.hpp
#pragma once

#include <stdexcept>
#include <string>

namespace khess {

/// Invalid argument: out-of-range order, malformed matrix, bad family name.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for the input.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation requested outside the domain of a profile or formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Floating-point breakdown: non-finite values, step-size underflow,
/// quadrature or bracketing failure.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace khess
