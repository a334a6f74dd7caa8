#include <doctest.h>

#include "helpers.hpp"
#include "lsp/metrics.hpp"
#include "lsp/oracle_denoiser.hpp"

using namespace lsp;

namespace {

DelimiterSet no_delims(int vocab) { return DelimiterSet{std::vector<std::uint8_t>(vocab, 0)}; }

Trace toy_trace(int gen_len, std::vector<std::tuple<int, int, int>> steps) {
    // steps: (n_active, flips, compared)
    Trace t;
    t.gen_len = gen_len;
    int idx = 1;
    for (auto [n_active, flips, compared] : steps) {
        StepRecord rec;
        rec.step = idx++;
        rec.n_active = n_active;
        rec.flips = flips;
        rec.compared = compared;
        t.steps.push_back(rec);
    }
    return t;
}

RunSummary with_calls(std::uint64_t calls) {
    RunSummary s;
    s.denoiser_calls = calls;
    return s;
}

}  // namespace

TEST_CASE("flip_rate: zero flips everywhere") {
    auto t = toy_trace(100, {{100, 0, 0}, {60, 0, 40}, {30, 0, 20}, {10, 0, 5}});
    CHECK(flip_rate(t) == doctest::Approx(0.0));
}

TEST_CASE("flip_rate: direct ratio on a single mid-window step") {
    auto t = toy_trace(100, {{50, 2, 20}});
    CHECK(flip_rate(t) == doctest::Approx(10.0));
}

TEST_CASE("flip_rate: steps outside the window are excluded") {
    // completion fractions: 0.0 (excluded), 0.5 (included), 0.9 (excluded)
    auto t = toy_trace(100, {{100, 9, 10}, {50, 1, 10}, {10, 9, 10}});
    CHECK(flip_rate(t) == doctest::Approx(10.0));
}

TEST_CASE("flip_rate: empty window is an error naming the window") {
    auto t = toy_trace(100, {{100, 0, 0}});
    try {
        flip_rate(t, {0.4, 0.6});
        FAIL("expected throw");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("0.4") != std::string::npos);
    }
}

TEST_CASE("speedup: identity and call-count arithmetic") {
    CHECK(speedup(with_calls(128), with_calls(128)) == doctest::Approx(1.0));
    CHECK(speedup(with_calls(64), with_calls(128)) == doctest::Approx(2.0));
    CHECK_THROWS_AS(speedup(with_calls(0), with_calls(128)), std::invalid_argument);
}

TEST_CASE("speedup: fixed_prefix(k) over full is exactly k") {
    for (std::size_t k : {2u, 4u, 8u}) {
        OracleDenoiser od(std::vector<TokenId>(128, 2), 10, 9, {10.0, 1.0, 0.0, 0.0, 0.0});
        SchedulerConfig full_cfg;
        full_cfg.kind = SchedulerKind::full;
        full_cfg.gen_len = 128;
        SchedulerConfig fixed_cfg;
        fixed_cfg.kind = SchedulerKind::fixed_prefix;
        fixed_cfg.fixed_k = k;
        fixed_cfg.gen_len = 128;
        auto full_run = summarize(run({}, od, no_delims(10), full_cfg).trace);
        auto fixed_run = summarize(run({}, od, no_delims(10), fixed_cfg).trace);
        CHECK(speedup(fixed_run, full_run) == doctest::Approx(static_cast<double>(k)));
    }
}

TEST_CASE("decay_curve: fixed_prefix arithmetic sequence") {
    OracleDenoiser od(std::vector<TokenId>(16, 2), 10, 9, {10.0, 1.0, 0.0, 0.0, 0.0});
    SchedulerConfig cfg;
    cfg.kind = SchedulerKind::fixed_prefix;
    cfg.fixed_k = 4;
    cfg.gen_len = 16;
    auto curve = decay_curve(run({}, od, no_delims(10), cfg).trace);
    CHECK(curve == std::vector<std::pair<int, int>>{{1, 16}, {2, 12}, {3, 8}, {4, 4}});
}

TEST_CASE("decay_curve: lsp halving sequence with snapping off") {
    OracleDenoiser od(std::vector<TokenId>(16, 2), 10, 9, {10.0, 1.0, 0.0, 0.0, 0.0});
    SchedulerConfig cfg;
    cfg.kind = SchedulerKind::lsp;
    cfg.gen_len = 16;
    cfg.snap.mode = SnapMode::off;
    auto curve = decay_curve(run({}, od, no_delims(10), cfg).trace);
    CHECK(curve ==
          std::vector<std::pair<int, int>>{{1, 16}, {2, 8}, {3, 4}, {4, 2}, {5, 1}});
}

TEST_CASE("decay_curve: strictly decreasing, last N_k >= 1") {
    OracleDenoiser od(std::vector<TokenId>(48, 2), 10, 9, {6.0, 0.97, 1.0, 2.0, 0.5});
    SchedulerConfig cfg;
    cfg.kind = SchedulerKind::lsp;
    cfg.gen_len = 48;
    cfg.seed = 9;
    auto curve = decay_curve(run({}, od, no_delims(10), cfg).trace);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second < curve[i - 1].second);
    CHECK(curve.back().second >= 1);
}

TEST_CASE("summarize: histogram and counters") {
    OracleDenoiser od(std::vector<TokenId>(16, 2), 10, 9, {10.0, 1.0, 0.0, 0.0, 0.0});
    SchedulerConfig cfg;
    cfg.kind = SchedulerKind::fixed_prefix;
    cfg.fixed_k = 4;
    cfg.gen_len = 16;
    auto s = summarize(run({}, od, no_delims(10), cfg).trace);
    CHECK(s.total_steps == 4);
    CHECK(s.denoiser_calls == 4);
    CHECK(s.tokens_per_step.at(4) == 4);
    CHECK(s.scheduler == "fixed_prefix");
}

TEST_CASE("directional flip rate: lsp below scattered over 20 seeds") {
    int lsp_lower = 0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
        OracleDenoiser od(std::vector<TokenId>(128, 2), 10, 9, {6.0, 0.97, 1.0, 2.0, 0.5});
        SchedulerConfig a;
        a.kind = SchedulerKind::lsp;
        a.gen_len = 128;
        a.seed = static_cast<std::uint64_t>(seed);
        SchedulerConfig b = a;
        b.kind = SchedulerKind::scattered_margin;
        const double fr_lsp = summarize(run({}, od, no_delims(10), a).trace).flip_rate;
        const double fr_scattered = summarize(run({}, od, no_delims(10), b).trace).flip_rate;
        if (fr_lsp < fr_scattered) ++lsp_lower;
    }
    CHECK(lsp_lower > seeds / 2);
}
