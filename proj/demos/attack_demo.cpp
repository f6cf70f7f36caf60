// Recover LCG parameters from four consecutive outputs, the weakness that
// motivates the perturbed map.

#include <cstdio>
#include <vector>

#include "trident/analysis.hpp"

int main() {
    using namespace trident;

    const MapParams lcg(16, 16, 5, 0, 1, 0, 0);  // x <- 5x + 1 mod 2^16
    const auto samples = keystream(lcg, 4);
    std::printf("observed:");
    for (auto x : samples) std::printf(" %llu", static_cast<unsigned long long>(x));
    std::printf("\n");

    const auto rec = lcg_recover(samples, 16);
    std::printf("recovered a=%llu c=%llu consistent=%d\n",
                static_cast<unsigned long long>(rec.a),
                static_cast<unsigned long long>(rec.c), rec.consistent);
    return 0;
}
