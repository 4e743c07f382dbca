// errors.hpp — exception hierarchy shared by every module

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnoise {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input problems: the caller handed us something outside the contract.
struct ValidationError : Error {
    using Error::Error;
};
struct ShapeError : ValidationError {
    using ValidationError::ValidationError;
};
struct DomainError : ValidationError {
    using ValidationError::ValidationError;
};
struct BasisError : ValidationError {
    using ValidationError::ValidationError;
};
struct FormatError : ValidationError {
    using ValidationError::ValidationError;
};
struct CommutationError : ValidationError {
    using ValidationError::ValidationError;
};
struct KernelError : ValidationError {
    using ValidationError::ValidationError;
};

// Numerical failures on otherwise well-formed input.
struct NumericalError : Error {
    using Error::Error;
};
struct RangeError : NumericalError {
    using NumericalError::NumericalError;
};
struct NotUnitaryError : NumericalError {
    using NumericalError::NumericalError;
};
struct DecompositionError : NumericalError {
    using NumericalError::NumericalError;
};

struct SingularityError : NumericalError {
    SingularityError(const std::string& what, double condition)
        : NumericalError(what + " (condition number " + std::to_string(condition) + ")"),
          condition_number(condition) {}
    double condition_number;
};

struct MultiplicityError : NumericalError {
    MultiplicityError(const std::string& what, std::size_t dim)
        : NumericalError(what + " (kernel dimension " + std::to_string(dim) + ")"),
          kernel_dimension(dim) {}
    std::size_t kernel_dimension;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace qnoise
