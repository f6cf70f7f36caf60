#pragma once

// Deterministic byte-stream providers feeding the statistical battery and
// the CLI. Every source is a sequential stream: fill() hands out the next
// chunk.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>

#include "trident/common.hpp"
#include "trident/core_map.hpp"
#include "trident/trident.hpp"

namespace trident {

class ByteSource {
public:
    virtual ~ByteSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;
    virtual std::string name() const = 0;
};

class TridentSource final : public ByteSource {
public:
    explicit TridentSource(const TridentKey& key) : gen_(key) {}
    void fill(std::span<std::uint8_t> out) override { gen_.fill(out.data(), out.size()); }
    std::string name() const override { return "trident"; }

private:
    Trident gen_;
};

// Little-endian serialization of a single map's samples (n/8 bytes each).
class CoreMapSource final : public ByteSource {
public:
    explicit CoreMapSource(const MapParams& params) : gen_(params) {
        if (params.n % 8 != 0)
            throw UnsupportedWidth("byte serialization needs n divisible by 8");
    }
    void fill(std::span<std::uint8_t> out) override {
        const int wbytes = gen_.params().n / 8;
        std::size_t i = 0;
        while (i < out.size()) {
            word w = gen_.next();
            for (int b = 0; b < wbytes && i < out.size(); ++b, ++i) {
                out[i] = static_cast<std::uint8_t>(w & 0xFF);
                w >>= 8;
            }
        }
    }
    std::string name() const override { return "core-map"; }

private:
    CoreMap gen_;
};

// Low 32 bits of each sample, little-endian.
class LowWordSource final : public ByteSource {
public:
    explicit LowWordSource(const MapParams& params) : gen_(params) {
        if (params.n < 32)
            throw UnsupportedWidth("low-32 serialization needs n >= 32");
    }
    void fill(std::span<std::uint8_t> out) override {
        std::size_t i = 0;
        while (i < out.size()) {
            word w = gen_.next() & 0xFFFFFFFFu;
            for (int b = 0; b < 4 && i < out.size(); ++b, ++i) {
                out[i] = static_cast<std::uint8_t>(w & 0xFF);
                w >>= 8;
            }
        }
    }
    std::string name() const override { return "low32"; }

private:
    CoreMap gen_;
};

// One chosen bit of each sample, packed LSB-first into bytes.
class BitPlaneSource final : public ByteSource {
public:
    BitPlaneSource(const MapParams& params, int bit) : gen_(params), bit_(bit) {
        if (bit < 0 || bit >= params.n) throw ParamError("bit plane out of range");
    }
    void fill(std::span<std::uint8_t> out) override {
        for (auto& byte : out) {
            unsigned b = 0;
            for (int i = 0; i < 8; ++i)
                b |= static_cast<unsigned>((gen_.next() >> bit_) & 1) << i;
            byte = static_cast<std::uint8_t>(b);
        }
    }
    std::string name() const override { return "bit" + std::to_string(bit_); }

private:
    CoreMap gen_;
    int bit_;
};

class ZeroSource final : public ByteSource {
public:
    void fill(std::span<std::uint8_t> out) override {
        std::fill(out.begin(), out.end(), std::uint8_t{0});
    }
    std::string name() const override { return "zero"; }
};

// mt19937_64 reference stream; the known-good control for calibration tests.
class ReferenceSource final : public ByteSource {
public:
    explicit ReferenceSource(std::uint64_t seed) : rng_(seed) {}
    void fill(std::span<std::uint8_t> out) override {
        std::size_t i = 0;
        while (i < out.size()) {
            std::uint64_t w = rng_();
            for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
                out[i] = static_cast<std::uint8_t>(w & 0xFF);
                w >>= 8;
            }
        }
    }
    std::string name() const override { return "mt19937_64"; }

private:
    std::mt19937_64 rng_;
};

}  // namespace trident
