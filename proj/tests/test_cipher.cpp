#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "trident/cipher.hpp"

using namespace trident;

namespace {

TridentKey test_key(int s = 32) {
    std::array<word, 15> w{};
    w[0] = 1; w[1] = 2; w[2] = 3;
    for (int i = 0; i < 6; ++i) w[3 + i] = 100 + static_cast<word>(i);
    for (int i = 0; i < 6; ++i) w[9 + i] = 200 + static_cast<word>(i);
    return key_schedule(RawKeyBlob(64, w), s);
}

std::string roundtrip(const TridentKey& k, const std::string& plain) {
    std::istringstream pin(plain);
    std::ostringstream enc;
    encrypt_stream(k, pin, enc);
    std::istringstream cin_(enc.str());
    std::ostringstream dec;
    decrypt_stream(k, cin_, dec);
    return dec.str();
}

}  // namespace

TEST_CASE("header packs to exactly 8 bytes and parses back", "[cipher]") {
    const CipherHeader hdr{64, 32};
    const auto bytes = hdr.pack();
    REQUIRE(bytes.size() == 8);
    CHECK(bytes[0] == 'T');
    CHECK(bytes[1] == 'R');
    CHECK(bytes[2] == 'I');
    CHECK(bytes[3] == '1');
    CHECK(bytes[4] == 64);
    CHECK(bytes[5] == 32);
    CHECK(bytes[6] == 0);
    CHECK(bytes[7] == 0);
    const auto parsed = CipherHeader::parse(bytes);
    CHECK(parsed.n == 64);
    CHECK(parsed.s == 32);
}

TEST_CASE("parse rejects bad magic and short input", "[cipher]") {
    std::array<std::uint8_t, 8> bad{'T', 'R', 'I', '2', 64, 32, 0, 0};
    CHECK_THROWS_AS(CipherHeader::parse(bad), BadHeader);
    std::array<std::uint8_t, 4> shorty{'T', 'R', 'I', '1'};
    CHECK_THROWS_AS(CipherHeader::parse(shorty), BadHeader);
}

TEST_CASE("decrypt inverts encrypt, empty input included", "[cipher]") {
    const TridentKey k = test_key();
    CHECK(roundtrip(k, "") == "");
    CHECK(roundtrip(k, "a") == "a");
    CHECK(roundtrip(k, std::string(65536 + 13, 'x')) == std::string(65536 + 13, 'x'));

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        std::string plain(rng() % 10000, '\0');
        for (auto& ch : plain) ch = static_cast<char>(rng() & 0xFF);
        REQUIRE(roundtrip(k, plain) == plain);
    }
}

TEST_CASE("ciphertext is header plus keystream for zero plaintext", "[cipher]") {
    const TridentKey k = test_key();
    const std::string zeros(256, '\0');
    std::istringstream pin(zeros);
    std::ostringstream enc;
    encrypt_stream(k, pin, enc);
    const std::string ct = enc.str();
    REQUIRE(ct.size() == 8 + 256);
    Trident gen(k);
    const auto ks = gen.keystream_bytes(256);
    for (std::size_t i = 0; i < 256; ++i)
        REQUIRE(static_cast<std::uint8_t>(ct[8 + i]) == ks[i]);
}

TEST_CASE("decrypting with the wrong key yields different plaintext", "[cipher]") {
    const TridentKey k1 = test_key();
    auto k2 = k1;
    k2.x0 ^= 1;
    std::string plain(1024, '\0');
    std::mt19937_64 rng(7);
    for (auto& ch : plain) ch = static_cast<char>(rng() & 0xFF);
    std::istringstream pin(plain);
    std::ostringstream enc;
    encrypt_stream(k1, pin, enc);
    std::istringstream cin_(enc.str());
    std::ostringstream dec;
    decrypt_stream(k2, cin_, dec);
    CHECK(dec.str() != plain);
}

TEST_CASE("decrypt rejects mismatched shift or width", "[cipher]") {
    const TridentKey k32 = test_key(32);
    const TridentKey k16 = test_key(16);
    std::istringstream pin("secret");
    std::ostringstream enc;
    encrypt_stream(k32, pin, enc);
    std::istringstream cin_(enc.str());
    std::ostringstream dec;
    CHECK_THROWS_AS(decrypt_stream(k16, cin_, dec), KeyMismatch);
}

TEST_CASE("decrypt rejects truncated and foreign ciphertext", "[cipher]") {
    const TridentKey k = test_key();
    std::istringstream garbage("not a ciphertext");
    std::ostringstream out;
    CHECK_THROWS_AS(decrypt_stream(k, garbage, out), BadHeader);
    std::istringstream tiny("TRI");
    CHECK_THROWS_AS(decrypt_stream(k, tiny, out), BadHeader);
}
