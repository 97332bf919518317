#pragma once

#include <stdexcept>
#include <string>

namespace hfa {

/// Raised when an argument is outside the documented domain of an operation
/// (zero frequency, a pair outside the fusion domain, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A requested dimension would exceed the configured cap.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// The sampling is too coarse for the requested method.
class ResolutionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A relative error was requested but its denominator vanishes.
class UndefinedRelativeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The operation does not apply to this input (e.g. h3 search on an abelian algebra).
class NotApplicableError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A structural precondition failed (e.g. a non-nilpotent algebra).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hfa
