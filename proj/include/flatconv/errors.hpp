#pragma once

#include <stdexcept>
#include <string>

namespace flatconv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// grid_measure
struct InvalidGrid final : Error { using Error::Error; };
struct InvalidAtom final : Error { using Error::Error; };
struct EmptyMeasure final : Error { using Error::Error; };
struct RoundingUnsafe final : Error { using Error::Error; };

// construct
struct TooManyPoints final : Error { using Error::Error; };

// metrics
struct EmptySet final : Error { using Error::Error; };

// concentration
struct OutOfHypothesis final : Error { using Error::Error; };
struct InvalidVariance final : Error { using Error::Error; };
struct CapTripped final : Error { using Error::Error; };

}  // namespace flatconv
