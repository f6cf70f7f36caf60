#pragma once

// XOR stream cipher over the Trident keystream with an 8-byte framing
// header. No IV/nonce exists in this construction: reusing a key across
// messages leaks plaintext XORs, as with any raw XOR stream cipher.

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "trident/common.hpp"
#include "trident/trident.hpp"

namespace trident {

struct BadHeader : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct KeyMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CipherHeader {
    static constexpr std::array<std::uint8_t, 4> kMagic = {'T', 'R', 'I', '1'};
    static constexpr std::size_t kSize = 8;

    std::uint8_t n = 64;
    std::uint8_t s = 32;
    // bytes 6..7 are reserved, written as zero, ignored on read

    std::array<std::uint8_t, kSize> pack() const noexcept {
        return {kMagic[0], kMagic[1], kMagic[2], kMagic[3], n, s, 0, 0};
    }

    static CipherHeader parse(std::span<const std::uint8_t> bytes) {
        if (bytes.size() < kSize)
            throw BadHeader("ciphertext shorter than the 8-byte header");
        for (std::size_t i = 0; i < kMagic.size(); ++i)
            if (bytes[i] != kMagic[i])
                throw BadHeader("bad magic; not a TRI1 ciphertext");
        return CipherHeader{bytes[4], bytes[5]};
    }
};

namespace detail {

inline void xor_stream(Trident& gen, std::istream& in, std::ostream& out) {
    std::array<char, 65536> buf;
    std::array<std::uint8_t, 65536> ks;
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        const std::size_t got = static_cast<std::size_t>(in.gcount());
        if (got == 0) break;
        gen.fill(ks.data(), got);
        for (std::size_t i = 0; i < got; ++i)
            buf[i] = static_cast<char>(static_cast<std::uint8_t>(buf[i]) ^ ks[i]);
        out.write(buf.data(), static_cast<std::streamsize>(got));
    }
    if (in.bad() || out.bad()) throw std::runtime_error("stream I/O failure");
}

}  // namespace detail

// ciphertext = header || (plaintext xor keystream)
inline void encrypt_stream(const TridentKey& key, std::istream& in, std::ostream& out) {
    CipherHeader hdr{static_cast<std::uint8_t>(key.n), static_cast<std::uint8_t>(key.s)};
    const auto packed = hdr.pack();
    out.write(reinterpret_cast<const char*>(packed.data()),
              static_cast<std::streamsize>(packed.size()));
    Trident gen(key);
    detail::xor_stream(gen, in, out);
}

// Validates the header against the supplied key before decrypting.
inline void decrypt_stream(const TridentKey& key, std::istream& in, std::ostream& out) {
    std::array<std::uint8_t, CipherHeader::kSize> raw{};
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw BadHeader("ciphertext shorter than the 8-byte header");
    const CipherHeader hdr = CipherHeader::parse(raw);
    if (hdr.n != key.n || hdr.s != key.s)
        throw KeyMismatch("header n/s (" + std::to_string(hdr.n) + "/" +
                          std::to_string(hdr.s) + ") do not match the key (" +
                          std::to_string(key.n) + "/" + std::to_string(key.s) + ")");
    Trident gen(key);
    detail::xor_stream(gen, in, out);
}

}  // namespace trident
