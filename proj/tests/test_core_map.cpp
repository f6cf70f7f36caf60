#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "trident/core_map.hpp"

using namespace trident;

TEST_CASE("classify_params congruence flags", "[core_map]") {
    auto klass = [](word a0, word da, word c0, word dc) {
        return classify_params(MapParams(16, 16, a0, da, c0, dc, 0));
    };
    auto k1 = klass(5, 0, 1, 0);
    CHECK(k1.lcg_maximal);
    auto k2 = klass(5, 4, 1, 4);
    CHECK(k2.lcg_maximal);
    CHECK(k2.dyn_maximal);
    CHECK(k2.full_recommended);
    auto k3 = klass(2, 0, 2, 0);
    CHECK_FALSE(k3.lcg_maximal);
    CHECK_FALSE(k3.dyn_maximal);
    CHECK_FALSE(k3.full_recommended);
}

TEST_CASE("full_recommended implies dyn_maximal", "[core_map]") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        MapParams p(12, 6, rng() & 0xFFF, rng() & 0xFFF, rng() & 0xFFF,
                    rng() & 0xFFF, rng() & 0xFFF);
        auto k = classify_params(p);
        if (k.full_recommended) CHECK(k.dyn_maximal);
    }
}

TEST_CASE("linear_part evaluates (a*x + c) mod 2^n", "[core_map]") {
    CHECK(linear_part(MapState{10, 9, 5, 0}, 8) == 95);
    CHECK(linear_part(MapState{0, 5, 1, 0}, 16) == 1);
    CHECK(linear_part(MapState{15, 15, 15, 0}, 4) == 0);
}

TEST_CASE("perturb xors the shifted image", "[core_map]") {
    CHECK(perturb(95, 95, 4, 8) == 90);
    CHECK(perturb(51, 51, 8, 8) == 51);  // s = n zeroes the perturbation
    CHECK(perturb(0, 255, 1, 8) == 127);
}

TEST_CASE("step updates coefficients before the linear part", "[core_map]") {
    MapParams p(8, 4, 5, 4, 1, 4, 10);
    MapState st = initial_state(p);
    word sample = step(st, p);
    CHECK(sample == 90);
    CHECK(st.x == 90);
    CHECK(st.a == 9);
    CHECK(st.c == 5);
    CHECK(st.t == 1);
}

TEST_CASE("step at s = n reduces to the plain LCG", "[core_map]") {
    MapParams p(16, 16, 5, 0, 1, 0, 0);
    MapState st = initial_state(p);
    CHECK(step(st, p) == 1);

    // low-bit stream of successive samples is 1,0,1,0,1,0
    MapState st2 = initial_state(p);
    for (word expect : {1u, 0u, 1u, 0u, 1u, 0u})
        CHECK((step(st2, p) & 1) == expect);
}

TEST_CASE("keystream returns x_1..x_count", "[core_map]") {
    MapParams fig1(16, 16, 5, 0, 1, 0, 0);
    CHECK(keystream(fig1, 0).empty());
    CHECK(keystream(fig1, 4) == std::vector<word>{1, 6, 31, 156});
}

TEST_CASE("mask closure over long streams", "[core_map]") {
    std::mt19937_64 rng(7);
    for (int n : {4, 8, 13, 64}) {
        const word m = mask_for(n);
        MapParams p(n, std::max(1, n / 2), rng() & m, rng() & m, rng() & m,
                    rng() & m, rng() & m);
        MapState st = initial_state(p);
        for (int i = 0; i < 10000; ++i) {
            word x = step(st, p);
            REQUIRE(x <= m);
            REQUIRE(st.a <= m);
            REQUIRE(st.c <= m);
        }
    }
}

TEST_CASE("determinism: identical params give identical sequences", "[core_map]") {
    MapParams p(24, 11, 0x123451, 0x60A04, 0x98765, 0xD0C0C, 0xABCDE);
    CHECK(keystream(p, 512) == keystream(p, 512));
}

TEST_CASE("constant coefficients never change when increments are zero", "[core_map]") {
    MapParams p(12, 5, 0x5A1, 0, 0x33D, 0, 0x7FF);
    MapState st = initial_state(p);
    for (int i = 0; i < 1000; ++i) {
        step(st, p);
        REQUIRE(st.a == 0x5A1);
        REQUIRE(st.c == 0x33D);
    }
}

TEST_CASE("degeneracy: s = n makes step equal the pure linear part", "[core_map]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 61);
        const word m = mask_for(n);
        MapParams p(n, n, rng() & m, rng() & m, rng() & m, rng() & m, rng() & m);
        MapState st = initial_state(p);
        for (int i = 0; i < 20; ++i) {
            const word a_next = (st.a + p.delta_a) & m;
            const word c_next = (st.c + p.delta_c) & m;
            const word expect = (a_next * st.x + c_next) & m;
            CHECK(step(st, p) == expect);
        }
    }
}

TEST_CASE("bijectivity of the fixed-coefficient map at s = n", "[core_map]") {
    // for odd a the map x -> (a*x + c) mod 2^n permutes [0, 2^n)
    for (int n : {6, 10, 12}) {
        const word m = mask_for(n);
        std::mt19937_64 rng(1000 + n);
        for (int trial = 0; trial < 4; ++trial) {
            const word a = (rng() & m) | 1;
            const word c = rng() & m;
            std::vector<bool> hit(m + 1, false);
            for (word x = 0; x <= m; ++x) hit[(a * x + c) & m] = true;
            CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
        }
    }
}

TEST_CASE("coefficient orbit period is 2^n / gcd(delta, 2^n)", "[core_map]") {
    for (int n : {8, 12, 16}) {
        const word m_full = word{1} << n;
        std::mt19937_64 rng(2000 + n);
        for (int trial = 0; trial < 10; ++trial) {
            const word delta = rng() & mask_for(n);
            // brute-force orbit of a0 under repeated increment
            const word a0 = rng() & mask_for(n);
            word a = (a0 + delta) & mask_for(n);
            std::uint64_t period = 1;
            while (a != a0) {
                a = (a + delta) & mask_for(n);
                ++period;
            }
            const std::uint64_t closed =
                m_full / std::gcd(static_cast<std::uint64_t>(delta), m_full);
            CHECK(period == closed);
            if (delta % 8 == 4) CHECK(period == (m_full >> 2));
        }
    }
}

TEST_CASE("plain LCG low-bit periodicity: bit k has period dividing 2^(k+1)",
          "[core_map]") {
    for (int n : {8, 12}) {
        std::mt19937_64 rng(3000 + n);
        const word m = mask_for(n);
        for (int trial = 0; trial < 5; ++trial) {
            MapParams p(n, n, ((rng() << 2) | 1) & m, 0, ((rng() << 1) | 1) & m,
                        0, rng() & m);
            auto seq = keystream(p, std::size_t{1} << (n + 1));
            for (int k = 0; k < n; ++k) {
                const std::uint64_t cand = std::uint64_t{1} << (k + 1);
                bool periodic = true;
                for (std::size_t i = 0; i + cand < seq.size() && periodic; ++i)
                    periodic = (((seq[i] >> k) & 1) == ((seq[i + cand] >> k) & 1));
                CHECK(periodic);
            }
        }
    }
}

TEST_CASE("parameter validation", "[core_map]") {
    CHECK_THROWS_AS(MapParams(8, 0, 5, 0, 1, 0, 0), ParamError);   // s = 0
    CHECK_THROWS_AS(MapParams(8, 9, 5, 0, 1, 0, 0), ParamError);   // s > n
    CHECK_THROWS_AS(MapParams(3, 1, 0, 0, 0, 0, 0), ParamError);   // n too small
    CHECK_THROWS_AS(MapParams(65, 1, 0, 0, 0, 0, 0), ParamError);  // n too large
    CHECK_THROWS_AS(MapParams(8, 4, 256, 0, 1, 0, 0), ParamError); // a0 >= 2^n
    CHECK_NOTHROW(MapParams(8, 8, 255, 255, 255, 255, 255));
    CHECK_NOTHROW(MapParams(64, 32, ~word{0}, 1, 2, 3, 4));
}
