#pragma once

// Single chaotic map: a sawtooth (mod-2^n affine) map with dynamically
// incremented coefficients and LSB perturbation,
//
//     a <- (a + da) mod 2^n
//     c <- (c + dc) mod 2^n
//     L  = (a*x + c) mod 2^n
//     x <- L xor (L >> s)
//
// Coefficients update BEFORE the linear part each step; with da = dc = 0 and
// s = n this degenerates to the plain linear congruential generator.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trident/common.hpp"

namespace trident {

struct MapParams {
    int n;         // bit width, 4..64
    int s;         // right-shift amount, 1..n (s = n disables the perturbation)
    word a0;       // initial multiplier
    word delta_a;  // multiplier increment per step
    word c0;       // initial additive term
    word delta_c;  // additive increment per step
    word x0;       // seed

    MapParams(int n_, int s_, word a0_, word delta_a_, word c0_, word delta_c_,
              word x0_)
        : n(n_), s(s_), a0(a0_), delta_a(delta_a_), c0(c0_), delta_c(delta_c_),
          x0(x0_) {
        require_width(n);
        if (s < 1 || s > n)
            throw ParamError("shift s must be in [1, n]; s=0 would zero the "
                             "stream (L xor L)");
        const word m = mask_for(n);
        for (word v : {a0, delta_a, c0, delta_c, x0})
            if (v > m)
                throw ParamError("coefficient exceeds 2^n - 1 for n=" +
                                 std::to_string(n));
    }
};

struct MapState {
    word x;
    word a;
    word c;
    std::uint64_t t;  // iterations taken; not part of the recurrent state
};

// Congruence-class flags of a parameter set. Purely arithmetic on the
// initial values; does not look at s.
struct ParamClass {
    bool lcg_maximal;       // a0 = 1 (mod 4), c0 odd
    bool dyn_maximal;       // a0 = 1 (4), da = 0 (4), c0 = 1 (4), dc = 0 (4)
    bool full_recommended;  // a0 = 1 (4), da = 4 (8), c0 = 1 (4), dc = 4 (8)
};

inline ParamClass classify_params(const MapParams& p) noexcept {
    ParamClass k{};
    k.lcg_maximal = (p.a0 % 4 == 1) && (p.c0 % 2 == 1);
    k.dyn_maximal = (p.a0 % 4 == 1) && (p.delta_a % 4 == 0) &&
                    (p.c0 % 4 == 1) && (p.delta_c % 4 == 0);
    k.full_recommended = (p.a0 % 4 == 1) && (p.delta_a % 8 == 4) &&
                         (p.c0 % 4 == 1) && (p.delta_c % 8 == 4);
    return k;
}

// (a*x + c) mod 2^n with the state's current coefficients.
constexpr word linear_part(const MapState& st, int n) noexcept {
    return (st.a * st.x + st.c) & mask_for(n);
}

// L xor (P >> s), masked to n bits. s = n zeroes the perturbation term.
constexpr word perturb(word L, word P, int s, int n) noexcept {
    const word shifted = (s >= 64) ? word{0} : (P >> s);
    return (L ^ shifted) & mask_for(n);
}

inline MapState initial_state(const MapParams& p) noexcept {
    return MapState{p.x0, p.a0, p.c0, 0};
}

// One iteration: coefficients first, then the perturbed linear part.
// Returns the new sample x_t.
inline word step(MapState& st, const MapParams& p) noexcept {
    const word m = mask_for(p.n);
    st.a = (st.a + p.delta_a) & m;
    st.c = (st.c + p.delta_c) & m;
    const word L = linear_part(st, p.n);
    st.x = perturb(L, L, p.s, p.n);
    ++st.t;
    return st.x;
}

// Sequential generator wrapper around step().
class CoreMap {
public:
    explicit CoreMap(const MapParams& params)
        : params_(params), state_(initial_state(params)) {}

    word next() noexcept { return step(state_, params_); }

    const MapParams& params() const noexcept { return params_; }
    const MapState& state() const noexcept { return state_; }

private:
    MapParams params_;
    MapState state_;
};

// First `count` samples x_1..x_count from the seed.
inline std::vector<word> keystream(const MapParams& p, std::size_t count) {
    std::vector<word> out;
    out.reserve(count);
    CoreMap gen(p);
    for (std::size_t i = 0; i < count; ++i) out.push_back(gen.next());
    return out;
}

}  // namespace trident
