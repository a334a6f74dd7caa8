// Acceptance suite: runs every acceptance criterion and prints one
// PASS/FAIL line per criterion. Exits nonzero when any criterion fails.
//
// Usage: acceptance <path-to-lspsched-cli> <path-to-corpus>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "lsp/harness.hpp"
#include "lsp/metrics.hpp"
#include "lsp/oracle_denoiser.hpp"
#include "lsp/scheduler.hpp"
#include "lsp/snapping.hpp"
#include "lsp/stability.hpp"

using namespace lsp;
using lsp::testing::ScriptedDenoiser;

namespace {

std::string g_cli_path;
std::string g_corpus_path;
int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << ": criterion " << idx << " (" << name << ")";
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << '\n';
    if (!ok) ++g_failures;
}

DelimiterSet no_delims(int vocab) { return DelimiterSet{std::vector<std::uint8_t>(vocab, 0)}; }

OracleDenoiser noiseless_oracle(std::size_t gen_len) {
    return OracleDenoiser(std::vector<TokenId>(gen_len, 2), 10, 9, {10.0, 1.0, 0.0, 0.0, 0.0});
}

SchedulerConfig config(SchedulerKind kind, std::size_t gen_len, std::uint64_t seed = 0) {
    SchedulerConfig cfg;
    cfg.kind = kind;
    cfg.gen_len = gen_len;
    cfg.seed = seed;
    cfg.snap.mode = SnapMode::off;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- criterion 1: exact step counts for fixed-size and full baselines -----
void criterion_1() {
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t k : {1u, 2u, 4u, 8u}) {
        auto od = noiseless_oracle(128);
        auto cfg = config(SchedulerKind::fixed_prefix, 128);
        cfg.fixed_k = k;
        const auto steps = run({}, od, no_delims(10), cfg).trace.steps.size();
        ok = ok && steps == 128 / k;
        detail << "fixed(" << k << ")=" << steps << " ";
    }
    auto od = noiseless_oracle(128);
    const auto full_steps =
        run({}, od, no_delims(10), config(SchedulerKind::full, 128)).trace.steps.size();
    ok = ok && full_steps == 128;
    detail << "full=" << full_steps;
    report(1, "step-count exactness", ok, detail.str());
}

// --- criterion 2: geometric decay and work bound ---------------------------
void criterion_2() {
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t gen_len : {64u, 256u, 1024u}) {
        auto od = noiseless_oracle(gen_len);
        auto cfg = config(SchedulerKind::lsp, gen_len);
        const auto trace = run({}, od, no_delims(10), cfg).trace;
        std::uint64_t active_sum = 0;
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            active_sum += static_cast<std::uint64_t>(trace.steps[i].n_active);
            if (i + 1 < trace.steps.size()) {
                const auto bound = static_cast<int>(
                    std::ceil((1.0 - cfg.bounds.alpha) * trace.steps[i].n_active));
                if (trace.steps[i + 1].n_active > bound) ok = false;
            }
        }
        if (active_sum > 4ull * gen_len) ok = false;
        detail << "L=" << gen_len << ":sumN=" << active_sum << "<=" << 4 * gen_len << " ";
    }
    report(2, "geometric decay and work bound", ok, detail.str());
}

// --- criterion 3: one denoiser call per LSP step ---------------------------
void criterion_3() {
    bool ok = true;
    std::mt19937 rng(7);
    for (int t = 0; t < 100; ++t) {
        const std::size_t gen_len = 1 + rng() % 128;
        OracleDenoiser od(std::vector<TokenId>(gen_len, 2), 10, 9,
                          {1.0 + (rng() % 8), 0.90 + 0.001 * (rng() % 100), 0.5 * (rng() % 4),
                           0.5 * (rng() % 4), 0.1 * (rng() % 10)});
        CountingDenoiser counted(od);
        auto cfg = config(SchedulerKind::lsp, gen_len, rng());
        cfg.bounds.alpha = 0.1 + 0.01 * (rng() % 30);
        cfg.bounds.beta = cfg.bounds.alpha + 0.01 * (rng() % 50);
        if (cfg.bounds.beta > 1.0) cfg.bounds.beta = 1.0;
        const auto trace = run({}, counted, no_delims(10), cfg).trace;
        if (counted.calls() != trace.steps.size() || trace.denoiser_calls != counted.calls())
            ok = false;
    }
    report(3, "single-pass contract over 100 random configs", ok);
}

// --- criterion 4: select_block_length vs brute force -----------------------
void criterion_4() {
    bool ok = true;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ud(0.0, 5.0);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng() % 64;
        std::vector<double> vals(n);
        for (auto& v : vals) v = ud(rng);
        SizingBounds b{0.25, 0.5, ud(rng)};
        const auto ma = make_margin_array(vals);

        // brute force: largest m in range whose first m margins all clear the floor
        const auto lo = static_cast<std::size_t>(std::ceil(b.alpha * static_cast<double>(n)));
        const auto hi = static_cast<std::size_t>(std::floor(b.beta * static_cast<double>(n)));
        std::size_t expected = 0;
        for (std::size_t m = std::max<std::size_t>(lo, 1); m <= hi && m <= n; ++m) {
            bool clear = true;
            for (std::size_t i = 0; i < m; ++i)
                if (!(vals[i] > b.tau_floor)) clear = false;
            if (clear) expected = std::max(expected, m);
        }

        if (select_block_length(ma, n, b) != expected) ok = false;
    }
    report(4, "threshold-selection oracle equivalence", ok);
}

// --- criterion 5: snap formula vs brute force -------------------------------
void criterion_5() {
    bool ok = true;
    std::mt19937 rng(17);
    DelimiterSet dset = no_delims(12);
    dset.flags[3] = dset.flags[5] = 1;
    for (int t = 0; t < 1000; ++t) {
        std::vector<TokenId> y(rng() % 24);
        for (auto& v : y) v = static_cast<TokenId>(rng() % 11);
        SnapConfig cfg{1 + rng() % 3, rng() % 10, SnapMode::strict};

        std::size_t inner = 0;
        for (std::size_t j = 1; j <= y.size(); ++j)
            if (dset.contains(y[j - 1]) && y.size() - j <= cfg.window) inner = j;

        if (snap(y, dset, cfg) != std::max(cfg.l_min, inner)) ok = false;

        cfg.mode = SnapMode::snap;
        const std::size_t got = snap(y, dset, cfg);
        if (inner != 0 && y.size() >= cfg.l_min) {
            // both modes agree when a delimiter is in the window
            if (got != std::max(cfg.l_min, inner)) ok = false;
        } else {
            // snap keeps the candidate where strict collapses to L_min
            if (got != y.size()) ok = false;
        }
    }
    report(5, "snap-formula oracle equivalence", ok);
}

// --- criterion 6: cache topology --------------------------------------------
void criterion_6() {
    bool ok = true;
    std::ostringstream detail;
    for (std::uint64_t seed : {0ull, 1ull, 2ull, 3ull, 4ull}) {
        OracleDenoiser od(std::vector<TokenId>(96, 2), 10, 9, {6.0, 0.97, 1.0, 2.0, 0.5});
        const auto trace =
            run({}, od, no_delims(10), config(SchedulerKind::lsp, 96, seed)).trace;
        if (trace.gather_events != 0 || trace.final_segments != 1) ok = false;
    }
    detail << "lsp: gather=0,segments=1; ";

    ScriptedDenoiser sd;
    sd.margin_fn = [](int pos, int) { return pos % 2 == 1 ? 9.0 : 1.0; };
    auto cfg = config(SchedulerKind::scattered_margin, 16);
    cfg.bounds.tau_floor = 2.0;
    const auto trace = run({}, sd, no_delims(sd.vocab), cfg).trace;
    detail << "scattered(alternating): gather=" << trace.gather_events;
    if (trace.gather_events < 1) ok = false;
    report(6, "cache topology", ok, detail.str());
}

// --- criterion 7: directional flip-rate separation with a sign test ---------
void criterion_7() {
    const int n_seeds = 20;
    double sum_lsp = 0, sum_scattered = 0;
    int wins = 0, pairs = 0;
    for (int seed = 0; seed < n_seeds; ++seed) {
        OracleDenoiser od(std::vector<TokenId>(128, 2), 10, 9, {6.0, 0.97, 1.0, 2.0, 0.5});
        auto a = config(SchedulerKind::lsp, 128, static_cast<std::uint64_t>(seed));
        auto b = config(SchedulerKind::scattered_margin, 128, static_cast<std::uint64_t>(seed));
        const double fr_lsp = summarize(run({}, od, no_delims(10), a).trace).flip_rate;
        const double fr_sc = summarize(run({}, od, no_delims(10), b).trace).flip_rate;
        sum_lsp += fr_lsp;
        sum_scattered += fr_sc;
        if (fr_lsp != fr_sc) {
            ++pairs;
            if (fr_sc > fr_lsp) ++wins;
        }
    }
    // one-sided sign test: P(X >= wins | n pairs, p = 1/2)
    double p_value = 0.0;
    for (int j = wins; j <= pairs; ++j) {
        double logc = std::lgamma(pairs + 1) - std::lgamma(j + 1) - std::lgamma(pairs - j + 1);
        p_value += std::exp(logc - pairs * std::log(2.0));
    }
    const bool ok = sum_lsp / n_seeds < sum_scattered / n_seeds && p_value < 0.05;
    std::ostringstream detail;
    detail << "mean lsp=" << sum_lsp / n_seeds << "% vs scattered=" << sum_scattered / n_seeds
           << "%, sign-test p=" << p_value;
    report(7, "directional flip-rate separation", ok, detail.str());
}

// --- criterion 8: directional speedup ---------------------------------------
void criterion_8() {
    auto od = noiseless_oracle(128);
    const auto trace = run({}, od, no_delims(10), config(SchedulerKind::lsp, 128)).trace;
    std::ostringstream detail;
    detail << "lsp calls=" << trace.denoiser_calls << " (full=128)";
    report(8, "directional speedup >= 2.0x vs full", trace.denoiser_calls <= 64, detail.str());
}

// --- criterion 9: byte-identical traces across two CLI invocations ----------
void criterion_9() {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string t1 = (dir / "lsp_accept_trace1.jsonl").string();
    const std::string t2 = (dir / "lsp_accept_trace2.jsonl").string();
    bool ok = true;
    std::string detail;
    for (const auto& trace_path : {t1, t2}) {
        const std::string cmd = "'" + g_cli_path + "' run --scheduler lsp --corpus '" +
                                g_corpus_path + "' --gen-len 64 --seed 7 --trace-out '" +
                                trace_path + "' --summary-out '" +
                                (dir / "lsp_accept_summary.json").string() +
                                "' > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) {
            ok = false;
            detail = "CLI invocation failed";
        }
    }
    if (ok) {
        const auto a = slurp(t1), b = slurp(t2);
        ok = !a.empty() && a == b;
        detail = "trace bytes " + std::to_string(a.size()) + (ok ? " identical" : " differ");
    }
    report(9, "determinism across CLI invocations", ok, detail);
}

// --- criterion 10: fallback liveness ----------------------------------------
void criterion_10() {
    ScriptedDenoiser sd;  // zero margin everywhere
    const std::size_t gen_len = 96;
    const auto trace =
        run({}, sd, no_delims(sd.vocab), config(SchedulerKind::lsp, gen_len)).trace;
    bool ok = trace.steps.size() == gen_len;
    for (const auto& rec : trace.steps)
        if (rec.l_snapped != 1 || rec.committed_ids.size() != 1) ok = false;
    std::ostringstream detail;
    detail << "steps=" << trace.steps.size() << " (L=" << gen_len << "), 1 token/step";
    report(10, "fallback liveness under zero margins", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <lspsched-cli> <corpus>\n";
        return 2;
    }
    g_cli_path = argv[1];
    g_corpus_path = argv[2];

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
