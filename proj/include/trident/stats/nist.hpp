#pragma once

// Six tests from NIST SP 800-22, computed per the standard's reference
// formulas. Inputs are 0/1 bit vectors (see bits.hpp for the extraction
// order). Each test reports its statistic and p-value; pass means
// p_value >= alpha.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trident/common.hpp"
#include "trident/stats/special.hpp"

namespace trident::stats {

struct TestReport {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 0.0;
    double alpha = 0.01;
    bool pass = false;
};

inline TestReport make_report(std::string name, double stat, double p, double alpha) {
    return TestReport{std::move(name), stat, p, alpha, p >= alpha};
}

using Bits = std::span<const std::uint8_t>;

// Frequency (monobit): S = sum(2b-1), p = erfc(|S|/sqrt(2n)).
inline TestReport monobit(Bits bits, double alpha = 0.01) {
    const std::size_t n = bits.size();
    if (n < 100) throw InsufficientData("monobit needs >= 100 bits");
    std::int64_t ones = 0;
    for (auto b : bits) ones += b;
    const double S = 2.0 * static_cast<double>(ones) - static_cast<double>(n);
    const double s_obs = std::fabs(S) / std::sqrt(static_cast<double>(n));
    return make_report("monobit", S, std::erfc(s_obs / std::sqrt(2.0)), alpha);
}

// Frequency within a block: chi^2 = 4M sum (pi_i - 1/2)^2 over N blocks.
inline TestReport block_frequency(Bits bits, std::size_t M, double alpha = 0.01) {
    const std::size_t n = bits.size();
    if (n < 100) throw InsufficientData("block frequency needs >= 100 bits");
    if (M < 2 || M > n) throw ParamError("block size M out of range");
    const std::size_t N = n / M;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < M; ++j) ones += bits[i * M + j];
        const double pi_i = static_cast<double>(ones) / static_cast<double>(M);
        chi2 += (pi_i - 0.5) * (pi_i - 0.5);
    }
    chi2 *= 4.0 * static_cast<double>(M);
    return make_report("block_frequency", chi2,
                       igamc(static_cast<double>(N) / 2.0, chi2 / 2.0), alpha);
}

// Runs: total number of runs against its expectation, gated on the
// frequency pre-test |pi - 1/2| < 2/sqrt(n).
inline TestReport runs(Bits bits, double alpha = 0.01) {
    const std::size_t n = bits.size();
    if (n < 100) throw InsufficientData("runs needs >= 100 bits");
    std::size_t ones = 0;
    for (auto b : bits) ones += b;
    const double pi = static_cast<double>(ones) / static_cast<double>(n);
    std::size_t V = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) V += (bits[i] != bits[i + 1]);
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n)))
        return make_report("runs", static_cast<double>(V), 0.0, alpha);
    const double num = std::fabs(static_cast<double>(V) -
                                 2.0 * static_cast<double>(n) * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * static_cast<double>(n)) * pi * (1.0 - pi);
    return make_report("runs", static_cast<double>(V), std::erfc(num / den), alpha);
}

// Cumulative sums: z = max_k |S_k| of the +/-1 random walk.
inline TestReport cumulative_sums(Bits bits, bool reverse = false,
                                  double alpha = 0.01) {
    const std::size_t n = bits.size();
    if (n < 100) throw InsufficientData("cumulative sums needs >= 100 bits");
    std::int64_t S = 0, z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t b = reverse ? bits[n - 1 - i] : bits[i];
        S += b ? 1 : -1;
        z = std::max<std::int64_t>(z, std::llabs(S));
    }
    const double zf = static_cast<double>(z);
    const double nf = static_cast<double>(n);
    const double rt = std::sqrt(nf);
    double p = 1.0;
    {
        const auto lo = static_cast<std::int64_t>(std::floor((-nf / zf + 1.0) / 4.0));
        const auto hi = static_cast<std::int64_t>(std::floor((nf / zf - 1.0) / 4.0));
        for (std::int64_t k = lo; k <= hi; ++k)
            p -= normal_cdf((4.0 * k + 1.0) * zf / rt) -
                 normal_cdf((4.0 * k - 1.0) * zf / rt);
    }
    {
        const auto lo = static_cast<std::int64_t>(std::floor((-nf / zf - 3.0) / 4.0));
        const auto hi = static_cast<std::int64_t>(std::floor((nf / zf - 1.0) / 4.0));
        for (std::int64_t k = lo; k <= hi; ++k)
            p += normal_cdf((4.0 * k + 3.0) * zf / rt) -
                 normal_cdf((4.0 * k + 1.0) * zf / rt);
    }
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return make_report(reverse ? "cumulative_sums_rev" : "cumulative_sums", zf, p, alpha);
}

namespace detail {

// psi^2_m: overlapping m-bit pattern counts with wraparound.
inline double psi_squared(Bits bits, int m) {
    if (m <= 0) return 0.0;
    const std::size_t n = bits.size();
    std::vector<std::uint32_t> counts(std::size_t{1} << m, 0);
    const std::uint32_t mask = (1u << m) - 1;
    std::uint32_t idx = 0;
    for (int j = 0; j < m - 1; ++j) idx = (idx << 1) | bits[static_cast<std::size_t>(j) % n];
    for (std::size_t i = 0; i < n; ++i) {
        idx = ((idx << 1) | bits[(i + static_cast<std::size_t>(m) - 1) % n]) & mask;
        ++counts[idx];
    }
    double sum = 0.0;
    for (auto c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
    return (std::exp2(m) / static_cast<double>(n)) * sum - static_cast<double>(n);
}

}  // namespace detail

// Serial test; p-value of the first statistic (nabla psi^2_m). Floor of
// 2^(m+3) bits keeps ~8 expected hits per m-bit pattern.
inline TestReport serial(Bits bits, int m, double alpha = 0.01) {
    if (m < 2 || m > 20) throw ParamError("serial block length m out of range");
    if (bits.size() < (std::size_t{1} << (m + 3)))
        throw InsufficientData("serial needs >= 2^(m+3) bits");
    const double d1 = detail::psi_squared(bits, m) - detail::psi_squared(bits, m - 1);
    const double p1 = igamc(std::exp2(m - 2), d1 / 2.0);
    return make_report("serial", d1, p1, alpha);
}

// Approximate entropy: chi^2 = 2n(ln 2 - (phi_m - phi_{m+1})).
inline TestReport approximate_entropy(Bits bits, int m, double alpha = 0.01) {
    if (m < 1 || m > 20) throw ParamError("approximate entropy m out of range");
    const std::size_t n = bits.size();
    if (n < (std::size_t{1} << (m + 3)))
        throw InsufficientData("approximate entropy needs >= 2^(m+3) bits");
    auto phi = [&](int mm) -> double {
        std::vector<std::uint32_t> counts(std::size_t{1} << mm, 0);
        const std::uint32_t mask = (1u << mm) - 1;
        std::uint32_t idx = 0;
        for (int j = 0; j < mm - 1; ++j) idx = (idx << 1) | bits[static_cast<std::size_t>(j) % n];
        for (std::size_t i = 0; i < n; ++i) {
            idx = ((idx << 1) | bits[(i + static_cast<std::size_t>(mm) - 1) % n]) & mask;
            ++counts[idx];
        }
        double s = 0.0;
        for (auto c : counts) {
            if (c == 0) continue;
            const double f = static_cast<double>(c) / static_cast<double>(n);
            s += f * std::log(f);
        }
        return s;
    };
    const double apen = phi(m) - phi(m + 1);
    const double chi2 = 2.0 * static_cast<double>(n) * (std::log(2.0) - apen);
    return make_report("approximate_entropy", chi2,
                       igamc(std::exp2(m - 1), chi2 / 2.0), alpha);
}

}  // namespace trident::stats
