#pragma once

// Dynamical analysis: state-cycle measurement, period statistics over
// parameter families, return maps, bit-plane periods, birthday-formula
// distinct counts, and the LCG parameter-recovery attack.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "trident/common.hpp"
#include "trident/core_map.hpp"
#include "trident/cycle.hpp"
#include "trident/trident.hpp"

namespace trident {

namespace detail {

// splitmix64; used only to derive deterministic per-trial raw key material.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() noexcept {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// Run fn(i) for i in [0, count) on a few threads, results merged by index.
template <typename T, typename Fn>
std::vector<T> indexed_parallel(int count, Fn fn, bool parallel) {
    std::vector<T> out(static_cast<std::size_t>(count));
    unsigned threads = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) break;
            out[static_cast<std::size_t>(i)] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace detail

// The recurrent part of a single map's state; t is excluded on purpose.
struct XacState {
    word x, a, c;
    bool operator==(const XacState&) const noexcept = default;
};

// Minimal state cycle of a single map from its seed.
inline CycleReport map_state_cycle(const MapParams& p, std::uint64_t cap) {
    const word m = mask_for(p.n);
    auto stepper = [&p, m](XacState s) noexcept -> XacState {
        s.a = (s.a + p.delta_a) & m;
        s.c = (s.c + p.delta_c) & m;
        const word L = (s.a * s.x + s.c) & m;
        s.x = perturb(L, L, p.s, p.n);
        return s;
    };
    return find_cycle(stepper, XacState{p.x0, p.a0, p.c0}, cap);
}

// Minimal state cycle of a Trident key over the full 9-word state.
inline CycleReport trident_state_cycle(const TridentKey& k, std::uint64_t cap) {
    auto stepper = [&k](TridentState s) noexcept -> TridentState {
        trident_step(s, k);
        return s;
    };
    return find_cycle(stepper, initial_state(k), cap);
}

// Orbit length of a single coefficient under a <- (a + delta) mod 2^n,
// measured by cycle detection; the closed form is 2^n / gcd(delta, 2^n).
inline std::uint64_t coefficient_orbit_period(word delta, int n) {
    require_width(n);
    const word m = mask_for(n);
    auto stepper = [delta, m](word a) noexcept { return (a + delta) & m; };
    return find_cycle(stepper, word{1}, (std::uint64_t{1} << n) + 2).period;
}

// 2^n / gcd(delta, 2^n) = 2^(n - trailing_zeros(delta)).
inline std::uint64_t coefficient_period_closed_form(word delta, int n) {
    require_width(n);
    delta &= mask_for(n);
    if (delta == 0) return 1;
    const int tz = std::countr_zero(delta);
    if (tz >= n) return 1;
    if (n - tz >= 64)
        throw ParamError("coefficient period 2^64 does not fit a 64-bit result");
    return std::uint64_t{1} << (n - tz);
}

// --- parameter-family sampling -------------------------------------------

enum class ParamFamily { LcgMaximal, DynMaximal, FullRecommended };

// Raw fields are drawn uniformly and passed through the same
// constraint-forcing shifts as the Trident key schedule.
inline MapParams sample_params(ParamFamily family, int n, int s, std::uint64_t seed) {
    detail::SplitMix64 rng(seed);
    const word m = mask_for(n);
    const word a0 = detail::force_coefficient(rng.next() & m, n);
    word c0 = 0, da = 0, dc = 0;
    switch (family) {
        case ParamFamily::LcgMaximal:
            c0 = ((rng.next() << 1) | 1) & m;  // odd
            break;
        case ParamFamily::DynMaximal:
            c0 = detail::force_coefficient(rng.next() & m, n);
            da = (rng.next() << 2) & m;        // = 0 (mod 4), zero allowed
            dc = (rng.next() << 2) & m;
            break;
        case ParamFamily::FullRecommended:
            c0 = detail::force_coefficient(rng.next() & m, n);
            da = detail::force_increment(rng.next() & m, n);
            dc = detail::force_increment(rng.next() & m, n);
            break;
    }
    const word x0 = rng.next() & m;
    return MapParams(n, s, a0, da, c0, dc, x0);
}

struct PeriodStats {
    int n = 0;
    int s = 0;
    std::vector<std::uint64_t> periods;  // by trial index; capped trials hold 0
    std::uint64_t min_period = 0;
    std::uint64_t max_period = 0;
    double median_period = 0.0;
    double frac_at_least_2_1p5n = 0.0;   // among uncapped trials
    double frac_capped = 0.0;
};

inline PeriodStats measure_periods(ParamFamily family, int n, int s, int trials,
                                   std::uint64_t cap, std::uint64_t seed = 1,
                                   bool parallel = true) {
    require_width(n);
    if (trials < 1) throw ParamError("trials must be >= 1");
    detail::SplitMix64 seeder(seed);
    std::vector<std::uint64_t> trial_seeds(static_cast<std::size_t>(trials));
    for (auto& ts : trial_seeds) ts = seeder.next();

    auto run_one = [&](int i) -> std::uint64_t {
        MapParams p = sample_params(family, n, s, trial_seeds[static_cast<std::size_t>(i)]);
        CycleReport r = map_state_cycle(p, cap);
        return r.capped ? 0 : r.period;
    };
    PeriodStats st;
    st.n = n;
    st.s = s;
    st.periods = detail::indexed_parallel<std::uint64_t>(trials, run_one, parallel);

    std::vector<std::uint64_t> done;
    for (auto p : st.periods)
        if (p != 0) done.push_back(p);
    st.frac_capped = 1.0 - static_cast<double>(done.size()) / trials;
    if (!done.empty()) {
        std::sort(done.begin(), done.end());
        st.min_period = done.front();
        st.max_period = done.back();
        const std::size_t mid = done.size() / 2;
        st.median_period = (done.size() % 2 == 1)
                               ? static_cast<double>(done[mid])
                               : 0.5 * (static_cast<double>(done[mid - 1]) +
                                        static_cast<double>(done[mid]));
        const double threshold = std::exp2(1.5 * n);
        std::size_t hits = 0;
        for (auto p : done)
            if (static_cast<double>(p) >= threshold) ++hits;
        st.frac_at_least_2_1p5n = static_cast<double>(hits) / static_cast<double>(done.size());
    }
    return st;
}

// --- return map ------------------------------------------------------------

struct ReturnMapDump {
    std::vector<std::pair<word, word>> pairs;  // (x_{t-1}, x_t), chained
};

// Consecutive pairs over the first `points` orbit points x_0..x_{points-1}.
inline ReturnMapDump return_map(const MapParams& p, std::size_t points) {
    if (points < 2) throw ParamError("return map needs at least 2 points");
    ReturnMapDump dump;
    dump.pairs.reserve(points - 1);
    CoreMap gen(p);
    word prev = p.x0;
    for (std::size_t i = 1; i < points; ++i) {
        const word cur = gen.next();
        dump.pairs.emplace_back(prev, cur);
        prev = cur;
    }
    return dump;
}

// --- bit-plane periods ------------------------------------------------------

// Minimal period of each bit's stream within the window, via the KMP border
// (smallest p with b[i] == b[i+p] for all i). A period is only claimed when
// at least two full periods are visible; otherwise nullopt.
inline std::vector<std::optional<std::uint64_t>>
bitplane_periods(std::span<const word> seq, int n) {
    require_width(n);
    if (seq.size() < 2) throw InsufficientData("bit-plane periods need >= 2 samples");
    const std::size_t len = seq.size();
    std::vector<std::optional<std::uint64_t>> result(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> bits(len);
    std::vector<std::size_t> border(len);
    for (int k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < len; ++i)
            bits[i] = static_cast<std::uint8_t>((seq[i] >> k) & 1);
        border[0] = 0;
        for (std::size_t i = 1; i < len; ++i) {
            std::size_t j = border[i - 1];
            while (j > 0 && bits[i] != bits[j]) j = border[j - 1];
            if (bits[i] == bits[j]) ++j;
            border[i] = j;
        }
        const std::size_t p = len - border[len - 1];
        if (p <= len / 2)
            result[static_cast<std::size_t>(k)] = p;
    }
    return result;
}

// --- birthday formula -------------------------------------------------------

// Expected number of distinct values among N draws from m equiprobable
// values: m - m((m-1)/m)^N, evaluated stably.
inline double birthday_expected(double m, double N) {
    if (m < 1.0) throw ParamError("birthday_expected needs m >= 1");
    if (N < 0.0) throw ParamError("birthday_expected needs N >= 0");
    if (N == 0.0) return 0.0;
    if (m == 1.0) return 1.0;
    return -m * std::expm1(N * std::log1p(-1.0 / m));
}

inline std::uint64_t distinct_count(std::span<const word> seq) {
    std::vector<word> copy(seq.begin(), seq.end());
    std::sort(copy.begin(), copy.end());
    return static_cast<std::uint64_t>(
        std::unique(copy.begin(), copy.end()) - copy.begin());
}

// --- LCG parameter recovery --------------------------------------------------

struct RecoveredLCG {
    word a = 0;
    word c = 0;
    bool consistent = false;  // recurrence verified over the whole window
};

namespace detail {
// Inverse of an odd value modulo 2^64. Newton doubles the correct low bits
// each round: 3 -> 6 -> 12 -> 24 -> 48 -> 96.
constexpr word inverse_odd(word v) noexcept {
    word inv = v;
    for (int i = 0; i < 5; ++i) inv *= 2 - v * inv;
    return inv;
}
}  // namespace detail

// Solve a = (x2-x1)(x1-x0)^-1, c = x1 - a*x0 (mod 2^n) from consecutive
// plain-LCG outputs, then verify against the rest of the window.
inline RecoveredLCG lcg_recover(std::span<const word> samples, int n) {
    require_width(n);
    if (samples.size() < 3)
        throw InsufficientData("lcg_recover needs >= 3 consecutive samples");
    const word m = mask_for(n);
    const word d0 = (samples[1] - samples[0]) & m;
    if ((d0 & 1) == 0)
        throw NonInvertibleDifference("x1 - x0 is even; pick a different window");
    const word d1 = (samples[2] - samples[1]) & m;
    RecoveredLCG r;
    r.a = (d1 * detail::inverse_odd(d0)) & m;
    r.c = (samples[1] - r.a * samples[0]) & m;
    r.consistent = true;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (((r.a * samples[i] + r.c) & m) != (samples[i + 1] & m)) {
            r.consistent = false;
            break;
        }
    }
    return r;
}

// --- Trident period study -----------------------------------------------------

struct TridentPeriodReport {
    int n = 0;
    CycleReport joint;                    // 9-word state cycle
    std::array<CycleReport, 3> component; // standalone X, Y, Z full maps
    std::uint64_t lcm_components = 0;     // 0 when any measurement capped
    double joint_over_lcm = 0.0;
    bool joint_ge_max_component = false;
};

inline TridentPeriodReport trident_period_study(const TridentKey& key,
                                                std::uint64_t cap) {
    TridentPeriodReport rep;
    rep.n = key.n;
    rep.joint = trident_state_cycle(key, cap);
    const Component which[3] = {Component::X, Component::Y, Component::Z};
    std::uint64_t max_comp = 0;
    bool all_closed = !rep.joint.capped;
    std::uint64_t l = 1;
    for (int i = 0; i < 3; ++i) {
        rep.component[static_cast<std::size_t>(i)] =
            map_state_cycle(standalone_component(key, which[i]), cap);
        const CycleReport& cr = rep.component[static_cast<std::size_t>(i)];
        if (cr.capped) {
            all_closed = false;
        } else {
            max_comp = std::max(max_comp, cr.period);
            l = std::lcm(l, cr.period);
        }
    }
    if (all_closed) {
        rep.lcm_components = l;
        rep.joint_over_lcm = static_cast<double>(rep.joint.period) / static_cast<double>(l);
        rep.joint_ge_max_component = rep.joint.period >= max_comp;
    }
    return rep;
}

// Study key for small widths. Pairwise distinctness of the 12 derived values
// is unsatisfiable below n=6 (the residue classes are too small), so study
// keys draw the constrained values freely.
inline TridentKey sample_study_key(int n, int s, std::uint64_t seed) {
    require_width(n);
    if (s < 1 || s > n) throw ParamError("shift s must be in [1, n]");
    detail::SplitMix64 rng(seed);
    const word m = mask_for(n);
    TridentKey k{};
    k.n = n;
    k.s = s;
    k.x0 = rng.next() & m;
    k.y0 = rng.next() & m;
    k.z0 = rng.next() & m;
    word* coeffs[6] = {&k.a0, &k.c0, &k.b0, &k.d0, &k.e0, &k.h0};
    word* incs[6] = {&k.da, &k.dc, &k.db, &k.dd, &k.de, &k.dh};
    for (auto* p : coeffs) *p = detail::force_coefficient(rng.next() & m, n);
    for (auto* p : incs) *p = detail::force_increment(rng.next() & m, n);
    return k;
}

// Minimal period of the emitted sample stream within the state cycle; the
// sample period always divides the state period. Small-n tool.
inline std::optional<std::uint64_t> sample_period(const MapParams& p,
                                                  std::uint64_t cap) {
    CycleReport cr = map_state_cycle(p, cap);
    if (cr.capped) return std::nullopt;
    CoreMap gen(p);
    for (std::uint64_t i = 0; i < cr.tail; ++i) gen.next();
    std::vector<word> cyc;
    cyc.reserve(cr.period);
    for (std::uint64_t i = 0; i < cr.period; ++i) cyc.push_back(gen.next());
    for (std::uint64_t d = 1; d <= cr.period; ++d) {
        if (cr.period % d != 0) continue;
        bool ok = true;
        for (std::uint64_t i = 0; i + d < cr.period && ok; ++i)
            ok = (cyc[i] == cyc[i + d]);
        if (ok) return d;
    }
    return cr.period;
}

}  // namespace trident
