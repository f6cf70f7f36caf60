#pragma once

// JSON and CSV rendering of analysis/battery reports. Field names are part
// of the interchange contract: tail, period, capped, per_bit_periods,
// expected_distinct, observed_distinct, recovered_a, recovered_c, and for
// battery rows: test, statistic, p_value, pass, proportion, verdict.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "trident/analysis.hpp"
#include "trident/cycle.hpp"
#include "trident/stats/battery.hpp"

namespace trident {

using nlohmann::json;

inline json to_json(const CycleReport& r) {
    return json{{"tail", r.tail}, {"period", r.period}, {"capped", r.capped}};
}

inline json bitplane_to_json(const std::vector<std::optional<std::uint64_t>>& periods) {
    json arr = json::array();
    for (const auto& p : periods) {
        if (p) arr.push_back(*p);
        else arr.push_back(nullptr);  // aperiodic within the window
    }
    return json{{"per_bit_periods", arr}};
}

inline json birthday_to_json(double expected, std::uint64_t observed) {
    return json{{"expected_distinct", expected}, {"observed_distinct", observed}};
}

inline json to_json(const RecoveredLCG& r) {
    return json{{"recovered_a", r.a}, {"recovered_c", r.c}, {"consistent", r.consistent}};
}

inline json to_json(const PeriodStats& st) {
    return json{{"n", st.n},
                {"s", st.s},
                {"trials", st.periods.size()},
                {"min_period", st.min_period},
                {"median_period", st.median_period},
                {"max_period", st.max_period},
                {"frac_at_least_2_1p5n", st.frac_at_least_2_1p5n},
                {"frac_capped", st.frac_capped},
                {"periods", st.periods}};
}

inline json to_json(const TridentPeriodReport& r) {
    json comps = json::array();
    for (const auto& c : r.component) comps.push_back(to_json(c));
    return json{{"n", r.n},
                {"joint", to_json(r.joint)},
                {"components", comps},
                {"lcm_components", r.lcm_components},
                {"joint_over_lcm", r.joint_over_lcm},
                {"joint_ge_max_component", r.joint_ge_max_component}};
}

inline json to_json(const stats::TestReport& r) {
    return json{{"test", r.test_name},
                {"statistic", r.statistic},
                {"p_value", r.p_value},
                {"pass", r.pass}};
}

inline json to_json(const stats::BatteryReport& rep, bool include_sequences = false) {
    json tests = json::array();
    for (const auto& col : rep.tests) {
        json t{{"test", col.test},
               {"proportion", col.proportion},
               {"in_interval", col.in_interval}};
        if (include_sequences) {
            json rs = json::array();
            for (std::size_t i = 0; i < col.reports.size(); ++i) {
                json r = to_json(col.reports[i]);
                if (!col.errors[i].empty()) r["error"] = col.errors[i];
                rs.push_back(std::move(r));
            }
            t["sequences"] = std::move(rs);
        }
        tests.push_back(std::move(t));
    }
    return json{{"source", rep.source_name},
                {"sequences", rep.config.sequences},
                {"bits_per_sequence", rep.config.bits},
                {"alpha", rep.config.alpha},
                {"proportion_low", rep.proportion_low},
                {"proportion_high", rep.proportion_high},
                {"tests", std::move(tests)},
                {"verdict", rep.all_in_interval ? "pass" : "fail"}};
}

// Two decimal columns "x_prev,x_curr", newline-terminated rows.
inline void write_return_map_csv(std::ostream& os, const ReturnMapDump& dump,
                                 bool header = false) {
    if (header) os << "x_prev,x_curr\n";
    for (const auto& [prev, cur] : dump.pairs)
        os << prev << ',' << cur << '\n';
}

}  // namespace trident
