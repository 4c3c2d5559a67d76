#pragma once

#include <stdexcept>
#include <string>

namespace supadd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct DimensionOverflow : Error {
    using Error::Error;
};

struct NonHermitianInput : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

struct NotCompletelyPositive : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct SamplingExhausted : Error {
    using Error::Error;
};

}  // namespace supadd
