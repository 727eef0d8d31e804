#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace riesz {

/// Base class for all contract violations raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveWeight : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct SpaceMismatch : Error {
    using Error::Error;
};
struct InvalidPartition : Error {
    using Error::Error;
};
struct NegativeInput : Error {
    using Error::Error;
};
struct IncompatibleOperators : Error {
    using Error::Error;
};

/// Raised when a brute-force enumeration would exceed its block cap.
struct CapExceeded : Error {
    std::size_t blocks;
    std::size_t cap;
    CapExceeded(std::size_t blocks_, std::size_t cap_)
        : Error("block count " + std::to_string(blocks_) + " exceeds enumeration cap " +
                std::to_string(cap_)),
          blocks(blocks_),
          cap(cap_) {}
};

struct NotInRangeOfV : Error {
    using Error::Error;
};
struct WindowTooSmall : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct MissingBounds : Error {
    using Error::Error;
};
struct WindowOverflow : Error {
    using Error::Error;
};
struct IndexOutOfWindow : Error {
    using Error::Error;
};
struct RangeNotNested : Error {
    using Error::Error;
};
struct NonZeroConditionalMean : Error {
    using Error::Error;
};
struct NotAFiltration : Error {
    using Error::Error;
};
struct ThetaNotContractive : Error {
    using Error::Error;
};
struct ThetaNotInRangeOfT : Error {
    using Error::Error;
};
struct NotContractive : Error {
    using Error::Error;
};
struct OperatorsNotNested : Error {
    using Error::Error;
};

/// A certificate constructed by the library failed its own validity re-check.
struct VerificationFailed : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct LimitExceeded : Error {
    using Error::Error;
};

}  // namespace riesz
