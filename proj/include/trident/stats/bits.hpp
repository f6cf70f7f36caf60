#pragma once

// Bit and word extraction from byte streams. Bit order is fixed for
// reproducibility: least-significant bit of each byte first. 32-bit samples
// are little-endian 4-byte groups.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace trident::stats {

// Expand bytes to one 0/1 value per bit, LSB of each byte first.
inline std::vector<std::uint8_t> bits_from_bytes(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes)
        for (int i = 0; i < 8; ++i)
            bits.push_back(static_cast<std::uint8_t>((b >> i) & 1));
    return bits;
}

inline std::vector<std::uint32_t> words32_from_bytes(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint32_t> words;
    words.reserve(bytes.size() / 4);
    for (std::size_t i = 0; i + 4 <= bytes.size(); i += 4) {
        words.push_back(static_cast<std::uint32_t>(bytes[i]) |
                        (static_cast<std::uint32_t>(bytes[i + 1]) << 8) |
                        (static_cast<std::uint32_t>(bytes[i + 2]) << 16) |
                        (static_cast<std::uint32_t>(bytes[i + 3]) << 24));
    }
    return words;
}

}  // namespace trident::stats
