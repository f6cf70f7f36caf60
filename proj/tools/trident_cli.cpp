// Command-line front end: keystream generation, XOR stream-cipher file
// encryption, the analysis subcommands, the statistical battery, and a
// throughput benchmark.
//
// Exit codes: 0 success, 2 usage error, 3 key error, 4 data error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trident/analysis.hpp"
#include "trident/cipher.hpp"
#include "trident/reports.hpp"
#include "trident/sources.hpp"
#include "trident/stats/battery.hpp"

#if defined(__x86_64__)
#include <x86intrin.h>
#endif

namespace {

using namespace trident;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitKey = 3;
constexpr int kExitData = 4;

struct KeyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KeyOptions {
    std::string key_file;
    std::string key_hex;
    int n = 64;
    int s = -1;  // -1 = default for n

    void attach(CLI::App* cmd) {
        cmd->add_option("--key-file", key_file, "binary key file (15 little-endian words)");
        cmd->add_option("--key-hex", key_hex, "key as a hex string");
        cmd->add_option("--n", n, "word width in bits")->check(CLI::Range(4, 64));
        cmd->add_option("--s", s, "right-shift amount (default n/2, 32 at n=64)");
    }

    TridentKey load() const {
        try {
            RawKeyBlob blob;
            if (!key_hex.empty()) {
                blob = RawKeyBlob::from_hex(key_hex, n);
            } else if (!key_file.empty()) {
                std::ifstream in(key_file, std::ios::binary);
                if (!in) throw KeyError("cannot open key file: " + key_file);
                std::vector<std::uint8_t> bytes(
                    (std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
                blob = RawKeyBlob::from_bytes(bytes, n);
            } else {
                throw KeyError("no key given; use --key-file or --key-hex");
            }
            return key_schedule(blob, s);
        } catch (const KeyError&) {
            throw;
        } catch (const std::exception& e) {
            throw KeyError(e.what());
        }
    }
};

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);
    out << content;
    if (!out) throw DataError("write failure: " + path);
}

// ---- gen -------------------------------------------------------------------

int cmd_gen(const KeyOptions& keyopt, std::uint64_t nbytes, const std::string& out_path) {
    const TridentKey key = keyopt.load();
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + out_path);
    Trident gen(key);
    std::vector<std::uint8_t> buf(1 << 20);
    std::uint64_t left = nbytes;
    while (left > 0) {
        const std::size_t chunk = static_cast<std::size_t>(
            std::min<std::uint64_t>(left, buf.size()));
        gen.fill(buf.data(), chunk);
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(chunk));
        left -= chunk;
    }
    if (!out) throw DataError("write failure: " + out_path);
    return 0;
}

// ---- encrypt / decrypt -------------------------------------------------------

int cmd_crypt(const KeyOptions& keyopt, const std::string& in_path,
              const std::string& out_path, bool decrypt) {
    const TridentKey key = keyopt.load();
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw DataError("cannot open input file: " + in_path);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + out_path);
    try {
        if (decrypt)
            decrypt_stream(key, in, out);
        else
            encrypt_stream(key, in, out);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    return 0;
}

// ---- analyze ----------------------------------------------------------------

struct MapFlags {
    int n = 16, s = 8;
    std::uint64_t a0 = 5, da = 4, c0 = 1, dc = 4, x0 = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n)->check(CLI::Range(4, 64));
        cmd->add_option("--s", s);
        cmd->add_option("--a0", a0);
        cmd->add_option("--da", da);
        cmd->add_option("--c0", c0);
        cmd->add_option("--dc", dc);
        cmd->add_option("--x0", x0);
    }
    MapParams params() const { return MapParams(n, s, a0, da, c0, dc, x0); }
};

int cmd_return_map(const MapFlags& flags, int fig, std::uint64_t count,
                   bool header, const std::string& out_path) {
    MapParams p = flags.params();
    std::size_t points = static_cast<std::size_t>(count);
    if (fig == 1) p = MapParams(16, 16, 5, 0, 1, 0, 0);
    if (fig == 2) p = MapParams(16, 16, 5, 4, 1, 4, 0);
    if (fig == 3) p = MapParams(16, 8, 5, 4, 1, 4, 0);
    if (count == 0)
        points = (fig == 3) ? (std::size_t{1} << 18) : (std::size_t{1} << 16);
    const auto dump = return_map(p, points);
    std::ostringstream os;
    write_return_map_csv(os, dump, header);
    write_output(out_path, os.str());
    return 0;
}

int cmd_period(const std::string& family_name, int n, int s, int trials,
               std::uint64_t cap, std::uint64_t seed, const std::string& out_path) {
    ParamFamily family;
    if (family_name == "lcg") family = ParamFamily::LcgMaximal;
    else if (family_name == "dyn") family = ParamFamily::DynMaximal;
    else if (family_name == "full") family = ParamFamily::FullRecommended;
    else throw CLI::ValidationError("--class must be lcg, dyn or full");
    if (s <= 0) s = (family == ParamFamily::FullRecommended) ? std::max(1, n / 2) : n;
    const auto st = measure_periods(family, n, s, trials, cap, seed);
    write_output(out_path, to_json(st).dump(2) + "\n");
    return 0;
}

int cmd_bitplane(const MapFlags& flags, std::uint64_t count, const std::string& out_path) {
    const auto p = flags.params();
    const auto seq = keystream(p, static_cast<std::size_t>(count));
    const auto periods = bitplane_periods(seq, p.n);
    write_output(out_path, bitplane_to_json(periods).dump(2) + "\n");
    return 0;
}

int cmd_birthday(const MapFlags& flags, std::uint64_t count, const std::string& out_path) {
    const auto p = flags.params();
    const auto seq = keystream(p, static_cast<std::size_t>(count));
    const double expected =
        birthday_expected(std::exp2(p.n), static_cast<double>(count));
    json j = birthday_to_json(expected, distinct_count(seq));
    j["n"] = p.n;
    j["samples"] = count;
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_attack(const std::string& samples_csv, int n, const std::string& out_path) {
    std::vector<word> samples;
    std::stringstream ss(samples_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        samples.push_back(std::stoull(tok, nullptr, 0));
    try {
        const auto rec = lcg_recover(samples, n);
        write_output(out_path, to_json(rec).dump(2) + "\n");
    } catch (const NonInvertibleDifference& e) {
        throw DataError(e.what());
    } catch (const InsufficientData& e) {
        throw DataError(e.what());
    }
    return 0;
}

int cmd_trident_period(int n, int s, int keys, std::uint64_t cap,
                       std::uint64_t seed, const std::string& out_path) {
    if (s <= 0) s = default_shift(n);
    json arr = json::array();
    int ge = 0;
    for (int i = 0; i < keys; ++i) {
        const TridentKey k = sample_study_key(n, s, seed + static_cast<std::uint64_t>(i));
        const auto rep = trident_period_study(k, cap);
        ge += rep.joint_ge_max_component;
        arr.push_back(to_json(rep));
    }
    json j{{"n", n}, {"s", s}, {"keys", keys},
           {"joint_ge_max_count", ge}, {"reports", arr}};
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

// ---- test (battery) -----------------------------------------------------------

int cmd_test(const std::string& source_name, const KeyOptions& keyopt,
             std::uint64_t seed, int k, std::uint64_t bits, double alpha,
             bool full_report, const std::string& out_path) {
    std::unique_ptr<ByteSource> src;
    if (source_name == "trident") {
        src = std::make_unique<TridentSource>(keyopt.load());
    } else if (source_name == "lcg" || source_name == "lcg-low" ||
               source_name == "lcg-bit0") {
        const auto p = sample_params(ParamFamily::LcgMaximal, 64, 64, seed);
        if (source_name == "lcg")
            src = std::make_unique<CoreMapSource>(p);
        else if (source_name == "lcg-low")
            src = std::make_unique<LowWordSource>(p);
        else
            src = std::make_unique<BitPlaneSource>(p, 0);
    } else if (source_name == "zero") {
        src = std::make_unique<ZeroSource>();
    } else if (source_name == "reference") {
        src = std::make_unique<ReferenceSource>(seed);
    } else {
        throw CLI::ValidationError(
            "--source must be trident, lcg, lcg-low, lcg-bit0, zero or reference");
    }
    stats::BatteryConfig cfg;
    cfg.sequences = k;
    cfg.bits = bits;
    cfg.alpha = alpha;
    const auto rep = stats::run_battery(*src, cfg);

    // fixed-width table on stderr, JSON on stdout/file
    std::ostringstream tbl;
    tbl << "source: " << rep.source_name << "  k=" << k << "  bits=" << bits
        << "  alpha=" << alpha << "\n";
    tbl << "proportion interval: [" << rep.proportion_low << ", "
        << rep.proportion_high << "]\n";
    for (const auto& col : rep.tests) {
        tbl << "  " << col.test;
        for (std::size_t pad = col.test.size(); pad < 22; ++pad) tbl << ' ';
        tbl << col.proportion << (col.in_interval ? "  ok" : "  OUT") << "\n";
    }
    tbl << "verdict: " << (rep.all_in_interval ? "pass" : "fail") << "\n";
    std::cerr << tbl.str();
    write_output(out_path, to_json(rep, full_report).dump(2) + "\n");
    return 0;
}

// ---- bench ---------------------------------------------------------------------

int cmd_bench(const KeyOptions& keyopt, double seconds, const std::string& out_path) {
    if (seconds <= 0.0) throw CLI::ValidationError("--seconds must be > 0");
    TridentKey key{};
    if (!keyopt.key_file.empty() || !keyopt.key_hex.empty()) {
        key = keyopt.load();
    } else {
        std::array<word, 15> w{};
        detail::SplitMix64 rng(12345);
        for (auto& v : w) v = rng.next();
        key = key_schedule(RawKeyBlob(64, w));
    }
    std::vector<std::uint8_t> buf(std::size_t{16} << 20);
    Trident gen(key);
    std::vector<double> rates;
    std::vector<double> cycles_per_bit;
    for (int run = 0; run < 5; ++run) {
        std::uint64_t bytes = 0;
        const auto start = std::chrono::steady_clock::now();
#if defined(__x86_64__)
        const std::uint64_t c0 = __rdtsc();
#endif
        double elapsed = 0.0;
        do {
            gen.fill(buf.data(), buf.size());
            bytes += buf.size();
            elapsed = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
        } while (elapsed < seconds);
#if defined(__x86_64__)
        const std::uint64_t c1 = __rdtsc();
        cycles_per_bit.push_back(static_cast<double>(c1 - c0) /
                                 (static_cast<double>(bytes) * 8.0));
#endif
        rates.push_back(static_cast<double>(bytes) / elapsed);
    }
    auto med = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    json j{{"bytes_per_second", med(rates)},
           {"mib_per_second", med(rates) / (1 << 20)},
           {"runs", rates}};
    if (!cycles_per_bit.empty()) j["cycles_per_bit"] = med(cycles_per_bit);
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trident coupled chaotic-map keystream generator"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "write raw keystream to a file");
    KeyOptions gen_key;
    gen_key.attach(gen);
    std::uint64_t gen_nbytes = 0;
    std::string gen_out;
    gen->add_option("--nbytes", gen_nbytes, "bytes to generate")->required();
    gen->add_option("--out", gen_out, "output path")->required();

    // encrypt / decrypt
    auto* enc = app.add_subcommand("encrypt", "encrypt a file (XOR stream cipher)");
    auto* dec = app.add_subcommand("decrypt", "decrypt a file");
    KeyOptions enc_key, dec_key;
    enc_key.attach(enc);
    dec_key.attach(dec);
    std::string enc_in, enc_out, dec_in, dec_out;
    enc->add_option("--in", enc_in)->required();
    enc->add_option("--out", enc_out)->required();
    dec->add_option("--in", dec_in)->required();
    dec->add_option("--out", dec_out)->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "dynamical analysis");
    analyze->require_subcommand(1);

    auto* rmap = analyze->add_subcommand("return-map", "dump (x_prev, x_curr) pairs as CSV");
    MapFlags rmap_flags;
    rmap_flags.attach(rmap);
    bool fig1 = false, fig2a = false, fig2b = false, rmap_header = false;
    std::uint64_t rmap_count = 0;
    std::string rmap_out;
    rmap->add_flag("--fig1", fig1, "sawtooth preset: n=16 s=16 a0=5 c0=1");
    rmap->add_flag("--fig2a", fig2a, "dynamic coefficients preset, s=n");
    rmap->add_flag("--fig2b", fig2b, "full map preset, s=8");
    rmap->add_option("--count", rmap_count, "orbit points (default per preset)");
    rmap->add_flag("--header", rmap_header, "emit the x_prev,x_curr header row");
    rmap->add_option("--out", rmap_out, "output path (default stdout)");

    auto* period = analyze->add_subcommand("period", "state-cycle statistics over a family");
    std::string period_class = "full";
    int period_n = 8, period_s = 0, period_trials = 100;
    std::uint64_t period_cap = std::uint64_t{1} << 28, period_seed = 1;
    std::string period_out;
    period->add_option("--class", period_class, "lcg | dyn | full");
    period->add_option("--n", period_n)->check(CLI::Range(4, 64));
    period->add_option("--s", period_s, "shift (default: n for lcg/dyn, n/2 for full)");
    period->add_option("--trials", period_trials);
    period->add_option("--cap", period_cap);
    period->add_option("--seed", period_seed);
    period->add_option("--out", period_out);

    auto* bitplane = analyze->add_subcommand("bitplane", "per-bit stream periods");
    MapFlags bp_flags;
    bp_flags.attach(bitplane);
    std::uint64_t bp_count = 4096;
    std::string bp_out;
    bitplane->add_option("--count", bp_count, "samples in the window");
    bitplane->add_option("--out", bp_out);

    auto* birthday = analyze->add_subcommand("birthday", "distinct count vs the birthday formula");
    MapFlags bd_flags;
    bd_flags.attach(birthday);
    std::uint64_t bd_count = std::uint64_t{1} << 18;
    std::string bd_out;
    birthday->add_option("--count", bd_count, "samples to draw");
    birthday->add_option("--out", bd_out);

    auto* attack = analyze->add_subcommand("attack", "recover LCG parameters from samples");
    std::string attack_samples;
    int attack_n = 16;
    std::string attack_out;
    attack->add_option("--samples", attack_samples, "comma-separated consecutive outputs")
        ->required();
    attack->add_option("--n", attack_n)->check(CLI::Range(4, 64));
    attack->add_option("--out", attack_out);

    auto* tperiod = analyze->add_subcommand("trident-period",
                                            "joint vs standalone period study");
    int tp_n = 5, tp_s = 0, tp_keys = 20;
    std::uint64_t tp_cap = std::uint64_t{1} << 28, tp_seed = 1;
    std::string tp_out;
    tperiod->add_option("--n", tp_n)->check(CLI::Range(4, 16));
    tperiod->add_option("--s", tp_s);
    tperiod->add_option("--keys", tp_keys);
    tperiod->add_option("--cap", tp_cap);
    tperiod->add_option("--seed", tp_seed);
    tperiod->add_option("--out", tp_out);

    // test
    auto* test = app.add_subcommand("test", "run the statistical battery");
    KeyOptions test_key;
    test_key.attach(test);
    std::string test_source = "trident";
    std::uint64_t test_seed = 1, test_bits = 1'000'000;
    int test_k = 100;
    double test_alpha = 0.01;
    bool test_full = false;
    std::string test_out;
    test->add_option("--source", test_source,
                     "trident | lcg | lcg-low | lcg-bit0 | zero | reference");
    test->add_option("--seed", test_seed, "seed for the non-keyed sources");
    test->add_option("--k", test_k, "number of sequences");
    test->add_option("--bits", test_bits, "bits per sequence");
    test->add_option("--alpha", test_alpha);
    test->add_flag("--full-report", test_full, "include per-sequence reports in the JSON");
    test->add_option("--out", test_out);

    // bench
    auto* bench = app.add_subcommand("bench", "keystream throughput");
    KeyOptions bench_key;
    bench_key.attach(bench);
    double bench_seconds = 1.0;
    std::string bench_out;
    bench->add_option("--seconds", bench_seconds, "measurement window per run (5 runs)");
    bench->add_option("--out", bench_out);

    try {
        app.parse(argc, argv);
        if (*gen) return cmd_gen(gen_key, gen_nbytes, gen_out);
        if (*enc) return cmd_crypt(enc_key, enc_in, enc_out, false);
        if (*dec) return cmd_crypt(dec_key, dec_in, dec_out, true);
        if (*analyze) {
            if (*rmap) {
                const int fig = fig1 ? 1 : fig2a ? 2 : fig2b ? 3 : 0;
                return cmd_return_map(rmap_flags, fig, rmap_count, rmap_header, rmap_out);
            }
            if (*period)
                return cmd_period(period_class, period_n, period_s, period_trials,
                                  period_cap, period_seed, period_out);
            if (*bitplane) return cmd_bitplane(bp_flags, bp_count, bp_out);
            if (*birthday) return cmd_birthday(bd_flags, bd_count, bd_out);
            if (*attack) return cmd_attack(attack_samples, attack_n, attack_out);
            if (*tperiod)
                return cmd_trident_period(tp_n, tp_s, tp_keys, tp_cap, tp_seed, tp_out);
        }
        if (*test)
            return cmd_test(test_source, test_key, test_seed, test_k, test_bits,
                            test_alpha, test_full, test_out);
        if (*bench) return cmd_bench(bench_key, bench_seconds, bench_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    } catch (const KeyError& e) {
        std::cerr << "key error: " << e.what() << "\n";
        return kExitKey;
    } catch (const DistinctnessViolation& e) {
        std::cerr << "key error: " << e.what() << "\n";
        return kExitKey;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const BadHeader& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const KeyMismatch& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ParamError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
