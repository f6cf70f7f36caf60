#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trident {

using word = std::uint64_t;

inline constexpr int kMinWidth = 4;
inline constexpr int kMaxWidth = 64;

// Low-n-bit mask. All map arithmetic runs in a 64-bit container and is
// masked back to n bits after every operation.
constexpr word mask_for(int n) noexcept {
    return n >= 64 ? ~word{0} : ((word{1} << n) - 1);
}

struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Two derived coefficient/increment values coincide in a Trident key.
struct DistinctnessViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested an operation needing byte-aligned words on a width that is not.
struct UnsupportedWidth : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Not enough samples/bits to evaluate a statistic at its validity minimum.
struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// x1 - x0 is even, hence not invertible mod 2^n; the LCG recovery needs a
// different sample window.
struct NonInvertibleDifference : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_width(int n) {
    if (n < kMinWidth || n > kMaxWidth)
        throw ParamError("bit width n must be in [4, 64], got " + std::to_string(n));
}

}  // namespace trident
