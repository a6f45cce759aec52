#pragma once

#include <stdexcept>
#include <string>

namespace svw {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computed object violates one of its invariants (e.g. an unnormalized state).
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation requested exactly at a singular point of a closed form.
class SingularPointError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The operation only has a closed form for a subset of models (M = 1).
class UnsupportedCaseError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Request exceeds the dense exact-diagonalization budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace svw
