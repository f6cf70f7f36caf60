#pragma once

// Trident: three coupled chaotic maps with chained LSB perturbation.
//
//     Lx = (a*x + c) mod 2^n      x <- Lx xor (Lz >> s)
//     Ly = (b*y + d) mod 2^n      y <- Ly xor (Lx >> s)
//     Lz = (e*z + h) mod 2^n      z <- Lz xor (Ly >> s)
//     output w = x xor z
//
// All six coefficients step by their increments before the linear parts are
// taken, and all three linear parts use the previous x, y, z. The y map never
// reaches the output.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trident/common.hpp"
#include "trident/core_map.hpp"

namespace trident {

// 15 raw key words, in fixed order:
//   x0 y0 z0  rA rC rB rD rE rH  rDA rDC rDB rDD rDE rDH
// Raw words carry the freely chosen key bits; the schedule forces the
// congruence constraints structurally.
struct RawKeyBlob {
    int n = 64;
    std::array<word, 15> words{};

    RawKeyBlob() = default;
    RawKeyBlob(int n_, const std::array<word, 15>& w) : n(n_), words(w) {
        require_width(n);
        const word m = mask_for(n);
        for (word v : words)
            if (v > m) throw ParamError("raw key word exceeds 2^n - 1");
    }

    // Binary layout: 15 little-endian words of n/8 bytes each.
    static RawKeyBlob from_bytes(const std::vector<std::uint8_t>& bytes, int n);
    std::vector<std::uint8_t> to_bytes() const;

    // Hex string of 2 * 15 * (n/8) digits, same word order.
    static RawKeyBlob from_hex(std::string_view hex, int n);
    std::string to_hex() const;
};

struct TridentKey {
    int n;
    int s;
    word x0, y0, z0;
    word a0, c0, b0, d0, e0, h0;        // initial coefficients, all = 1 (mod 4)
    word da, dc, db, dd, de, dh;        // increments, all = 4 (mod 8)
};

struct TridentState {
    word x, y, z;
    word a, c, b, d, e, h;
    std::uint64_t t;

    bool operator==(const TridentState& o) const noexcept {
        return x == o.x && y == o.y && z == o.z && a == o.a && c == o.c &&
               b == o.b && d == o.d && e == o.e && h == o.h;
    }
};

// Paper-fixed default for n=64; scaled to the same relative position for
// other widths.
constexpr int default_shift(int n) noexcept { return n == 64 ? 32 : (n / 2 > 0 ? n / 2 : 1); }

namespace detail {
// Coefficients consume n-2 effective bits: (raw << 2) | 1 forces = 1 (mod 4).
constexpr word force_coefficient(word raw, int n) noexcept {
    return ((raw << 2) | 1) & mask_for(n);
}
// Increments consume n-3 effective bits: (raw << 3) | 4 forces = 4 (mod 8).
constexpr word force_increment(word raw, int n) noexcept {
    return ((raw << 3) | 4) & mask_for(n);
}
}  // namespace detail

// Derive a constrained key from raw material. Throws DistinctnessViolation
// when two of the 12 derived coefficient/increment values coincide.
inline TridentKey key_schedule(const RawKeyBlob& blob, int s = -1) {
    const int n = blob.n;
    if (s == -1) s = default_shift(n);
    if (s < 1 || s > n) throw ParamError("shift s must be in [1, n]");

    TridentKey k{};
    k.n = n;
    k.s = s;
    k.x0 = blob.words[0];
    k.y0 = blob.words[1];
    k.z0 = blob.words[2];
    word* coeffs[6] = {&k.a0, &k.c0, &k.b0, &k.d0, &k.e0, &k.h0};
    word* incs[6] = {&k.da, &k.dc, &k.db, &k.dd, &k.de, &k.dh};
    for (int i = 0; i < 6; ++i) *coeffs[i] = detail::force_coefficient(blob.words[3 + i], n);
    for (int i = 0; i < 6; ++i) *incs[i] = detail::force_increment(blob.words[9 + i], n);

    const word all[12] = {k.a0, k.c0, k.b0, k.d0, k.e0, k.h0,
                          k.da, k.dc, k.db, k.dd, k.de, k.dh};
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j)
            if (all[i] == all[j])
                throw DistinctnessViolation(
                    "derived key values " + std::to_string(i) + " and " +
                    std::to_string(j) + " coincide (" + std::to_string(all[i]) + ")");
    return k;
}

inline TridentState initial_state(const TridentKey& k) noexcept {
    return TridentState{k.x0, k.y0, k.z0,
                        k.a0, k.c0, k.b0, k.d0, k.e0, k.h0, 0};
}

// One coupled iteration; returns w = x xor z.
inline word trident_step(TridentState& st, const TridentKey& k) noexcept {
    const word m = mask_for(k.n);
    st.a = (st.a + k.da) & m;
    st.c = (st.c + k.dc) & m;
    st.b = (st.b + k.db) & m;
    st.d = (st.d + k.dd) & m;
    st.e = (st.e + k.de) & m;
    st.h = (st.h + k.dh) & m;
    const word lx = (st.a * st.x + st.c) & m;
    const word ly = (st.b * st.y + st.d) & m;
    const word lz = (st.e * st.z + st.h) & m;
    st.x = perturb(lx, lz, k.s, k.n);
    st.y = perturb(ly, lx, k.s, k.n);
    st.z = perturb(lz, ly, k.s, k.n);
    ++st.t;
    return st.x ^ st.z;
}

enum class Component { X, Y, Z };

// Project one component out as a self-perturbed single map for period
// comparison against the coupled system.
inline MapParams standalone_component(const TridentKey& k, Component which) {
    switch (which) {
        case Component::X: return MapParams(k.n, k.s, k.a0, k.da, k.c0, k.dc, k.x0);
        case Component::Y: return MapParams(k.n, k.s, k.b0, k.db, k.d0, k.dd, k.y0);
        default:           return MapParams(k.n, k.s, k.e0, k.de, k.h0, k.dh, k.z0);
    }
}

class Trident {
public:
    explicit Trident(const TridentKey& key)
        : key_(key), state_(initial_state(key)) {}

    word next() noexcept { return trident_step(state_, key_); }

    // Fill with successive w words serialized little-endian (n/8 bytes each).
    // Throws UnsupportedWidth unless n is a multiple of 8.
    void fill(std::uint8_t* dst, std::size_t len) {
        if (key_.n % 8 != 0)
            throw UnsupportedWidth("keystream bytes need n divisible by 8, n=" +
                                   std::to_string(key_.n));
        const int wbytes = key_.n / 8;
        std::size_t i = 0;
        while (i < len) {
            word w = next();
            for (int b = 0; b < wbytes && i < len; ++b, ++i) {
                dst[i] = static_cast<std::uint8_t>(w & 0xFF);
                w >>= 8;
            }
        }
    }

    std::vector<std::uint8_t> keystream_bytes(std::size_t nbytes) {
        std::vector<std::uint8_t> out(nbytes);
        fill(out.data(), nbytes);
        return out;
    }

    const TridentKey& key() const noexcept { return key_; }
    const TridentState& state() const noexcept { return state_; }

private:
    TridentKey key_;
    TridentState state_;
};

// --- RawKeyBlob serialization ---

inline RawKeyBlob RawKeyBlob::from_bytes(const std::vector<std::uint8_t>& bytes, int n) {
    require_width(n);
    if (n % 8 != 0)
        throw UnsupportedWidth("binary key files need n divisible by 8");
    const std::size_t wbytes = static_cast<std::size_t>(n) / 8;
    if (bytes.size() != 15 * wbytes)
        throw ParamError("key blob must be exactly " + std::to_string(15 * wbytes) +
                         " bytes for n=" + std::to_string(n) + ", got " +
                         std::to_string(bytes.size()));
    RawKeyBlob blob;
    blob.n = n;
    for (int i = 0; i < 15; ++i) {
        word w = 0;
        for (std::size_t b = 0; b < wbytes; ++b)
            w |= static_cast<word>(bytes[i * wbytes + b]) << (8 * b);
        blob.words[static_cast<std::size_t>(i)] = w;
    }
    return blob;
}

inline std::vector<std::uint8_t> RawKeyBlob::to_bytes() const {
    if (n % 8 != 0)
        throw UnsupportedWidth("binary key files need n divisible by 8");
    const std::size_t wbytes = static_cast<std::size_t>(n) / 8;
    std::vector<std::uint8_t> out(15 * wbytes);
    for (int i = 0; i < 15; ++i) {
        word w = words[static_cast<std::size_t>(i)];
        for (std::size_t b = 0; b < wbytes; ++b) {
            out[i * wbytes + b] = static_cast<std::uint8_t>(w & 0xFF);
            w >>= 8;
        }
    }
    return out;
}

inline RawKeyBlob RawKeyBlob::from_hex(std::string_view hex, int n) {
    auto nibble = [](char ch) -> int {
        if (ch >= '0' && ch <= '9') return ch - '0';
        if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
        if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
        return -1;
    };
    std::vector<std::uint8_t> bytes;
    bytes.reserve(hex.size() / 2);
    if (hex.size() % 2 != 0) throw ParamError("hex key must have an even digit count");
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw ParamError("invalid hex digit in key");
        bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
    }
    return from_bytes(bytes, n);
}

inline std::string RawKeyBlob::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (std::uint8_t b : to_bytes()) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

}  // namespace trident
