#pragma once

#include <stdexcept>
#include <string>

namespace annealsig {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: sizes, indices, malformed files.
struct SpecError : Error {
    using Error::Error;
};
struct DimensionError : SpecError {
    using SpecError::SpecError;
};
struct RangeError : SpecError {
    using SpecError::SpecError;
};
struct CapacityError : SpecError {
    using SpecError::SpecError;
};
struct UnsupportedTopology : SpecError {
    using SpecError::SpecError;
};
struct UndefinedIsolated : SpecError {
    using SpecError::SpecError;
};
struct PreconditionError : SpecError {
    using SpecError::SpecError;
};

// Numerical failures inside an engine.
struct NumericalError : Error {
    using Error::Error;
};
struct StepSizeError : NumericalError {
    using NumericalError::NumericalError;
};
struct IntegrationError : NumericalError {
    using NumericalError::NumericalError;
};
struct BinningError : NumericalError {
    using NumericalError::NumericalError;
};
struct PositivityError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace annealsig
