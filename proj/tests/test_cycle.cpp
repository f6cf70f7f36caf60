#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "trident/analysis.hpp"
#include "trident/core_map.hpp"
#include "trident/cycle.hpp"

using namespace trident;

namespace {

// Independent oracle: store every state until the first repeat.
template <typename State, typename StepFn>
CycleReport naive_cycle(StepFn f, State s, std::uint64_t cap) {
    std::map<State, std::uint64_t> seen;
    std::uint64_t i = 0;
    while (i <= cap) {
        auto [it, fresh] = seen.emplace(s, i);
        if (!fresh) return {it->second, i - it->second, false};
        s = f(s);
        ++i;
    }
    return {0, 0, true};
}

}  // namespace

TEST_CASE("plain LCG reaches the maximal period", "[cycle]") {
    MapParams p(8, 8, 5, 0, 1, 0, 0);
    CycleReport r = map_state_cycle(p, 1 << 12);
    CHECK(r.tail == 0);
    CHECK(r.period == 256);
    CHECK_FALSE(r.capped);
}

TEST_CASE("fixed point has period 1", "[cycle]") {
    auto r = find_cycle([](int s) { return s; }, 7, 100);
    CHECK(r.period == 1);
    CHECK(r.tail == 0);
}

TEST_CASE("non-maximal parameters fall short of 2^n", "[cycle]") {
    MapParams p(8, 8, 2, 0, 2, 0, 1);
    CycleReport r = map_state_cycle(p, 1 << 12);
    CHECK_FALSE(r.capped);
    CHECK(r.period < 256);
    // cross-check against the store-all oracle
    const word m = mask_for(8);
    auto f = [m](word x) { return (2 * x + 2) & m; };
    CycleReport n = naive_cycle(f, word{1}, 1 << 12);
    CHECK(r.period == n.period);
    CHECK(r.tail == n.tail);
}

TEST_CASE("cap exhaustion reports capped in-band", "[cycle]") {
    MapParams p(16, 16, 5, 0, 1, 0, 0);  // period 65536
    CycleReport r = map_state_cycle(p, 100);
    CHECK(r.capped);
    CHECK(r.period == 0);
}

TEST_CASE("Brent agrees with the store-all oracle on random mappings", "[cycle]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        // random functional graph on a small domain: arbitrary tails + cycles
        const std::uint32_t dom = 64 + static_cast<std::uint32_t>(rng() % 2000);
        std::vector<std::uint32_t> table(dom);
        for (auto& v : table) v = static_cast<std::uint32_t>(rng() % dom);
        auto f = [&table](std::uint32_t s) { return table[s]; };
        const auto start = static_cast<std::uint32_t>(rng() % dom);
        CycleReport a = find_cycle(f, start, 1 << 16);
        CycleReport b = naive_cycle(f, start, 1 << 16);
        REQUIRE_FALSE(a.capped);
        REQUIRE(a.period == b.period);
        REQUIRE(a.tail == b.tail);
    }
}

TEST_CASE("Brent agrees with the oracle on quadratic maps with tails", "[cycle]") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 8 + static_cast<int>(rng() % 5);
        const word m = mask_for(n);
        const word a = rng() & m, c = rng() & m;
        auto f = [a, c, m](word x) { return (a * x * x + c) & m; };
        const word start = rng() & m;
        CycleReport br = find_cycle(f, start, 1 << 20);
        CycleReport na = naive_cycle(f, start, 1 << 20);
        REQUIRE_FALSE(br.capped);
        REQUIRE(br.period == na.period);
        REQUIRE(br.tail == na.tail);
    }
}

TEST_CASE("minimality: reported period re-closes and no divisor does", "[cycle]") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        const word m = mask_for(10);
        const word a = ((rng() << 2) | 1) & m;
        const word c = ((rng() << 1) | 1) & m;
        auto f = [a, c, m](word x) { return (a * x + c) & m; };
        const word start = rng() & m;
        CycleReport r = find_cycle(f, start, 1 << 14);
        REQUIRE_FALSE(r.capped);
        word s = start;
        for (std::uint64_t i = 0; i < r.tail; ++i) s = f(s);
        word probe = s;
        for (std::uint64_t d = 1; d < r.period; ++d) {
            probe = f(probe);
            if (r.period % d == 0) REQUIRE(probe != s);
        }
        probe = f(probe);
        REQUIRE(probe == s);
    }
}
