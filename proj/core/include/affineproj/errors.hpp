#pragma once

#include <stdexcept>

namespace affineproj {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad parameters, unreadable config).
struct ConfigError : Error {
    using Error::Error;
};

/// A mathematical precondition does not hold for the supplied system.
struct PreconditionError : Error {
    using Error::Error;
};

/// An enumeration would exceed the word budget.
struct BudgetError : Error {
    using Error::Error;
};

struct NonContractingError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct PositivityRequiredError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DiskInvarianceRequiredError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct SingularMatrixError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct EstimateNotContractingError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct ExceptionalDirectionError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct InputNotPositiveError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// A finite symbol sequence ran out before an operation finished.
struct SequenceExhaustedError : Error {
    using Error::Error;
};

}  // namespace affineproj
