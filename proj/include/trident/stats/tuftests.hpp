#pragma once

// Marsaglia-Tsang "tuftests" subset: the GCD test (chi-square on the Euclid
// step-count and gcd-value distributions of consecutive 32-bit pairs) and the
// birthday-spacings test (duplicate spacings are Poisson(lambda) with
// lambda = birthdays^3 / (4 * days)).

#include <algorithm>
#include <array>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "trident/common.hpp"
#include "trident/stats/nist.hpp"
#include "trident/stats/special.hpp"

namespace trident::stats {

namespace detail {

// P(Euclid steps = k) for uniform nonzero 32-bit pairs, k = 11..28.
// Monte-Carlo calibrated with 1.2e9 pairs (splitmix64 and xoshiro256++,
// 6e8 each, worst cross-generator discrepancy 2.03 sigma; mean 18.7585).
// Cells below 11 and above 28 are lumped.
inline constexpr int kGcdStepsLo = 11;
inline constexpr int kGcdStepsHi = 28;
inline constexpr std::array<double, 18> kGcdStepsP = {
    0.008515646,  // k=11
    0.016352559,  // k=12
    0.028431022,  // k=13
    0.044943113,  // k=14
    0.064764231,  // k=15
    0.085334731,  // k=16
    0.102994994,  // k=17
    0.114057315,  // k=18
    0.116032658,  // k=19
    0.108552684,  // k=20
    0.093387002,  // k=21
    0.073890583,  // k=22
    0.053789545,  // k=23
    0.036020745,  // k=24
    0.022158739,  // k=25
    0.012513338,  // k=26
    0.006476388,  // k=27
    0.003070232,  // k=28
};
inline constexpr double kGcdStepsPLow = 0.006590288;   // P(k <= 10)

// gcd-value cells: P(g = j) = (6/pi^2)/j^2 for j = 1..16, tail lumped.
inline constexpr int kGcdValueHi = 16;

// Smallest cell probability is ~0.2%; this floor keeps every expected
// count >= 5.
inline constexpr std::size_t kGcdMinPairs = 2500;

}  // namespace detail

struct EuclidResult {
    int steps;
    std::uint32_t gcd;
};

inline EuclidResult euclid(std::uint32_t u, std::uint32_t v) noexcept {
    int k = 0;
    while (v != 0) {
        const std::uint32_t w = u % v;
        u = v;
        v = w;
        ++k;
    }
    return {k, u};
}

struct GcdReport {
    TestReport steps;          // chi-square on the Euclid step-count cells
    TestReport value;          // chi-square on the gcd-value cells
    std::uint64_t pairs = 0;   // pairs actually tested
    std::uint64_t zero_pairs = 0;  // skipped pairs containing a zero word
};

// Consecutive non-overlapping pairs (s0,s1), (s2,s3), ... Pairs containing a
// zero are skipped and counted, as the original test resamples them.
inline GcdReport gcd_test(std::span<const std::uint32_t> samples, double alpha = 0.01) {
    const std::size_t npairs_in = samples.size() / 2;
    if (npairs_in < detail::kGcdMinPairs)
        throw InsufficientData("gcd test needs >= " +
                               std::to_string(2 * detail::kGcdMinPairs) +
                               " samples");
    constexpr int cells_k = detail::kGcdStepsHi - detail::kGcdStepsLo + 1 + 2;
    constexpr int cells_g = detail::kGcdValueHi + 1;
    std::array<std::uint64_t, cells_k> obs_k{};
    std::array<std::uint64_t, cells_g> obs_g{};

    GcdReport rep;
    for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
        const std::uint32_t u = samples[i], v = samples[i + 1];
        if (u == 0 || v == 0) {
            ++rep.zero_pairs;
            continue;
        }
        const EuclidResult er = euclid(u, v);
        ++rep.pairs;
        const int ki = std::clamp(er.steps, detail::kGcdStepsLo - 1,
                                  detail::kGcdStepsHi + 1) -
                       (detail::kGcdStepsLo - 1);
        ++obs_k[static_cast<std::size_t>(ki)];
        const std::size_t gi =
            er.gcd > static_cast<std::uint32_t>(detail::kGcdValueHi)
                ? static_cast<std::size_t>(detail::kGcdValueHi)
                : static_cast<std::size_t>(er.gcd - 1);
        ++obs_g[gi];
    }
    if (rep.pairs < detail::kGcdMinPairs)
        throw InsufficientData("gcd test: too few nonzero pairs (" +
                               std::to_string(rep.pairs) + ")");
    const double n = static_cast<double>(rep.pairs);

    double chi_k = 0.0;
    {
        double tail_hi = 1.0 - detail::kGcdStepsPLow;
        double e = n * detail::kGcdStepsPLow;
        chi_k += (static_cast<double>(obs_k[0]) - e) * (static_cast<double>(obs_k[0]) - e) / e;
        for (std::size_t j = 0; j < detail::kGcdStepsP.size(); ++j) {
            tail_hi -= detail::kGcdStepsP[j];
            e = n * detail::kGcdStepsP[j];
            const double d = static_cast<double>(obs_k[j + 1]) - e;
            chi_k += d * d / e;
        }
        e = n * tail_hi;
        const double d = static_cast<double>(obs_k[cells_k - 1]) - e;
        chi_k += d * d / e;
    }
    rep.steps = make_report("gcd_steps", chi_k,
                            chi_square_p(chi_k, cells_k - 1), alpha);

    double chi_g = 0.0;
    {
        constexpr double c = 6.0 / (std::numbers::pi * std::numbers::pi);
        double tail = 1.0;
        for (int j = 1; j <= detail::kGcdValueHi; ++j) {
            const double p = c / (static_cast<double>(j) * static_cast<double>(j));
            tail -= p;
            const double e = n * p;
            const double d = static_cast<double>(obs_g[static_cast<std::size_t>(j - 1)]) - e;
            chi_g += d * d / e;
        }
        const double e = n * tail;
        const double d = static_cast<double>(obs_g[cells_g - 1]) - e;
        chi_g += d * d / e;
    }
    rep.value = make_report("gcd_value", chi_g,
                            chi_square_p(chi_g, cells_g - 1), alpha);
    return rep;
}

// Duplicate spacings among sorted "birthdays". Samples are consumed in
// groups of `birthdays`; the total duplicate count across groups is compared
// against Poisson(groups * lambda) with a conservative two-sided p-value.
inline TestReport birthday_spacings(std::span<const std::uint32_t> samples,
                                    std::uint64_t days = std::uint64_t{1} << 32,
                                    std::size_t birthdays = 4096,
                                    double alpha = 0.01) {
    if (birthdays < 2) throw ParamError("birthday_spacings needs >= 2 birthdays");
    if (days == 0) throw ParamError("birthday_spacings needs days >= 1");
    const std::size_t groups = samples.size() / birthdays;
    if (groups < 1)
        throw InsufficientData("birthday_spacings needs >= " +
                               std::to_string(birthdays) + " samples");
    const double lambda = static_cast<double>(birthdays) *
                          static_cast<double>(birthdays) *
                          static_cast<double>(birthdays) /
                          (4.0 * static_cast<double>(days));
    const bool reduce = days < (std::uint64_t{1} << 32);

    std::uint64_t total = 0;
    std::vector<std::uint32_t> buf(birthdays);
    for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t i = 0; i < birthdays; ++i) {
            std::uint32_t v = samples[g * birthdays + i];
            if (reduce) v = static_cast<std::uint32_t>(v % days);
            buf[i] = v;
        }
        std::sort(buf.begin(), buf.end());
        for (std::size_t i = birthdays - 1; i > 0; --i) buf[i] -= buf[i - 1];
        std::sort(buf.begin() + 1, buf.end());
        for (std::size_t i = 2; i < birthdays; ++i)
            total += (buf[i] == buf[i - 1]);
    }
    const double p = poisson_two_sided_p(total, lambda * static_cast<double>(groups));
    return make_report("birthday_spacings", static_cast<double>(total), p, alpha);
}

}  // namespace trident::stats
