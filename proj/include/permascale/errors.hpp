#pragma once

#include <stdexcept>
#include <string>

namespace permascale {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct CapExceeded : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct NotInPn : Error {
    using Error::Error;
};

struct NonPositiveEntry : Error {
    using Error::Error;
};

struct NegativeEntry : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct BoundsViolated : Error {
    using Error::Error;
};

struct BracketFailure : Error {
    using Error::Error;
};

struct AllZeroAlpha : Error {
    using Error::Error;
};

struct ZeroMeanExponent : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

// MaxIterExceeded is declared where the partial result type is known
// (scaling.hpp, funcspace.hpp).

} // namespace permascale
