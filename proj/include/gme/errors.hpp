#pragma once

#include <stdexcept>

namespace gme {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct InvalidDimensionError : Error { using Error::Error; };
struct NotNormalizedError : Error { using Error::Error; };
struct InvalidBipartitionError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };
struct InvalidSubsetError : Error { using Error::Error; };
struct BadSplitError : Error { using Error::Error; };
struct KOutOfRangeError : Error { using Error::Error; };
struct BadParamsError : Error { using Error::Error; };
struct WrongPartyCountError : Error { using Error::Error; };
struct NotPureError : Error { using Error::Error; };
struct UnsamplableClassError : Error { using Error::Error; };

}  // namespace gme
