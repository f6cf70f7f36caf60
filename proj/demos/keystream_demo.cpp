// Minimal usage example: derive a key from raw material, print a few
// keystream words and the matching byte serialization.

#include <cstdio>

#include "trident/trident.hpp"

int main() {
    using namespace trident;

    std::array<word, 15> raw{};
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw[i] = 0x9E3779B97F4A7C15ULL * (i + 1);
    const TridentKey key = key_schedule(RawKeyBlob(64, raw));

    std::printf("n=%d s=%d\n", key.n, key.s);
    Trident gen(key);
    for (int i = 0; i < 4; ++i)
        std::printf("w_%d = %016llx\n", i + 1,
                    static_cast<unsigned long long>(gen.next()));

    Trident bytes(key);
    const auto ks = bytes.keystream_bytes(16);
    std::printf("first 16 bytes:");
    for (auto b : ks) std::printf(" %02x", b);
    std::printf("\n");
    return 0;
}
