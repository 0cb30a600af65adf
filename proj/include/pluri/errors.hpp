#pragma once

#include <stdexcept>
#include <string>

namespace pluri {

// Base of every error the engine raises. The CLI maps the subclasses to exit
// codes, so new error kinds should derive from one of the leaves below.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value could not be certified before the configured bit cap was reached.
class PrecisionExhausted : public Error {
public:
    PrecisionExhausted(const std::string& what, unsigned bits)
        : Error(what + " (precision cap " + std::to_string(bits) + " bits)"), bits_(bits) {}
    unsigned bits() const noexcept { return bits_; }

private:
    unsigned bits_;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

// Input outside the domain of a formula (bad query parameters, failed
// preconditions of a threshold formula, malformed expressions).
class DomainError : public Error {
public:
    using Error::Error;
};

class NoAdmissibleBranch : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateFraction : public DomainError {
public:
    using DomainError::DomainError;
};

class UnsupportedDimension : public DomainError {
public:
    using DomainError::DomainError;
};

class TailNotMonotone : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace pluri
