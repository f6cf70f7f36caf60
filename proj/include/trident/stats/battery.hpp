#pragma once

// Battery driver: runs the implemented tests over k disjoint sequences from
// a byte source and aggregates per-test pass proportions against the
// SP 800-22 proportion interval (1-alpha) +/- 3*sqrt(alpha(1-alpha)/k).

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trident/analysis.hpp"
#include "trident/sources.hpp"
#include "trident/stats/bits.hpp"
#include "trident/stats/nist.hpp"
#include "trident/stats/tuftests.hpp"

namespace trident::stats {

struct BatteryConfig {
    int sequences = 100;            // k
    std::size_t bits = 1'000'000;   // per sequence
    double alpha = 0.01;
    std::size_t block_m = 0;        // 0 = auto: bits/80, at least 20
    int serial_m = 0;               // 0 = auto: min(8, log2(bits) - 3)
    int apen_m = 0;                 // 0 = auto: same rule as serial
    std::uint64_t birthday_days = std::uint64_t{1} << 32;
    std::size_t birthdays = 4096;
    bool parallel = true;

    std::size_t block_m_effective() const {
        if (block_m != 0) return block_m;
        return std::max<std::size_t>(20, bits / 80);
    }
    int serial_m_effective() const {
        if (serial_m != 0) return serial_m;
        return std::min(8, static_cast<int>(std::bit_width(bits)) - 4);
    }
    int apen_m_effective() const {
        if (apen_m != 0) return apen_m;
        return std::min(8, static_cast<int>(std::bit_width(bits)) - 4);
    }
};

struct TestColumn {
    std::string test;
    std::vector<TestReport> reports;   // one per sequence, ordered by index
    std::vector<std::string> errors;   // per-sequence error text, "" if none
    double proportion = 0.0;           // passes / k (errors count as fails)
    bool in_interval = false;
};

struct BatteryReport {
    BatteryConfig config;
    std::string source_name;
    double proportion_low = 0.0;       // (1-a) - 3 sqrt(a(1-a)/k)
    double proportion_high = 1.0;      // min(1, (1-a) + 3 sqrt(a(1-a)/k))
    std::vector<TestColumn> tests;
    bool all_in_interval = false;      // the battery verdict
};

namespace detail {

struct SequenceResult {
    std::vector<TestReport> reports;
    std::vector<std::string> errors;
};

inline SequenceResult test_one_sequence(std::span<const std::uint8_t> bytes,
                                        const BatteryConfig& cfg) {
    const auto bits = bits_from_bytes(bytes);
    const auto bitspan = std::span<const std::uint8_t>(bits);
    SequenceResult res;
    auto attempt = [&](auto&& fn, const char* fallback_name) {
        try {
            res.reports.push_back(fn());
            res.errors.emplace_back();
        } catch (const std::exception& e) {
            res.reports.push_back(
                TestReport{fallback_name, 0.0, 0.0, cfg.alpha, false});
            res.errors.emplace_back(e.what());
        }
    };
    attempt([&] { return monobit(bitspan, cfg.alpha); }, "monobit");
    attempt([&] { return block_frequency(bitspan, cfg.block_m_effective(), cfg.alpha); },
            "block_frequency");
    attempt([&] { return runs(bitspan, cfg.alpha); }, "runs");
    attempt([&] { return cumulative_sums(bitspan, false, cfg.alpha); },
            "cumulative_sums");
    attempt([&] { return serial(bitspan, cfg.serial_m_effective(), cfg.alpha); },
            "serial");
    attempt([&] { return approximate_entropy(bitspan, cfg.apen_m_effective(), cfg.alpha); },
            "approximate_entropy");

    const auto words = words32_from_bytes(bytes);
    const auto wspan = std::span<const std::uint32_t>(words);
    std::optional<GcdReport> gcd;
    try {
        gcd = gcd_test(wspan, cfg.alpha);
    } catch (const std::exception& e) {
        res.reports.push_back(TestReport{"gcd_steps", 0.0, 0.0, cfg.alpha, false});
        res.errors.emplace_back(e.what());
        res.reports.push_back(TestReport{"gcd_value", 0.0, 0.0, cfg.alpha, false});
        res.errors.emplace_back(e.what());
    }
    if (gcd) {
        res.reports.push_back(gcd->steps);
        res.errors.emplace_back();
        res.reports.push_back(gcd->value);
        res.errors.emplace_back();
    }
    attempt([&] {
        return birthday_spacings(wspan, cfg.birthday_days, cfg.birthdays, cfg.alpha);
    }, "birthday_spacings");
    return res;
}

}  // namespace detail

inline BatteryReport run_battery(ByteSource& source, const BatteryConfig& cfg) {
    if (cfg.sequences < 1) throw ParamError("battery needs >= 1 sequence");
    if (cfg.bits % 8 != 0) throw ParamError("battery sequence bits must be byte-aligned");

    // Sequences are consecutive disjoint segments of the stream; extraction
    // is sequential, testing is parallel, merged by sequence index.
    const std::size_t seq_bytes = cfg.bits / 8;
    std::vector<std::vector<std::uint8_t>> data(static_cast<std::size_t>(cfg.sequences));
    for (auto& seq : data) {
        seq.resize(seq_bytes);
        source.fill(seq);
    }
    auto results = trident::detail::indexed_parallel<detail::SequenceResult>(
        cfg.sequences,
        [&](int i) { return detail::test_one_sequence(data[static_cast<std::size_t>(i)], cfg); },
        cfg.parallel);

    BatteryReport rep;
    rep.config = cfg;
    rep.source_name = source.name();
    const double k = static_cast<double>(cfg.sequences);
    const double half = 3.0 * std::sqrt(cfg.alpha * (1.0 - cfg.alpha) / k);
    rep.proportion_low = (1.0 - cfg.alpha) - half;
    rep.proportion_high = std::min(1.0, (1.0 - cfg.alpha) + half);

    const std::size_t ntests = results.front().reports.size();
    rep.all_in_interval = true;
    for (std::size_t t = 0; t < ntests; ++t) {
        TestColumn col;
        col.test = results.front().reports[t].test_name;
        int passes = 0;
        for (auto& r : results) {
            col.reports.push_back(r.reports[t]);
            col.errors.push_back(r.errors[t]);
            passes += r.reports[t].pass;
        }
        col.proportion = static_cast<double>(passes) / k;
        col.in_interval = col.proportion >= rep.proportion_low &&
                          col.proportion <= rep.proportion_high;
        rep.all_in_interval = rep.all_in_interval && col.in_interval;
        rep.tests.push_back(std::move(col));
    }
    return rep;
}

}  // namespace trident::stats
