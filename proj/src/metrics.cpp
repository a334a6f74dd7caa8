#include "lsp/metrics.hpp"

#include <stdexcept>
#include <string>

namespace lsp {

double flip_rate(const Trace& trace, std::pair<double, double> window) {
    if (trace.steps.empty()) throw std::invalid_argument("flip_rate: empty trace");
    long long flips = 0, compared = 0;
    bool any = false;
    for (const auto& rec : trace.steps) {
        const double frac =
            static_cast<double>(trace.gen_len - rec.n_active) / static_cast<double>(trace.gen_len);
        if (frac < window.first || frac > window.second) continue;
        any = true;
        flips += rec.flips;
        compared += rec.compared;
    }
    if (!any)
        throw std::invalid_argument("flip_rate: no steps in completion window [" +
                                    std::to_string(window.first) + ", " +
                                    std::to_string(window.second) + "]");
    if (compared == 0) return 0.0;
    return 100.0 * static_cast<double>(flips) / static_cast<double>(compared);
}

double speedup(const RunSummary& run, const RunSummary& baseline) {
    if (run.denoiser_calls == 0 || baseline.denoiser_calls == 0)
        throw std::invalid_argument("speedup: zero denoiser calls");
    return static_cast<double>(baseline.denoiser_calls) /
           static_cast<double>(run.denoiser_calls);
}

std::vector<std::pair<int, int>> decay_curve(const Trace& trace) {
    std::vector<std::pair<int, int>> curve;
    curve.reserve(trace.steps.size());
    for (const auto& rec : trace.steps) curve.emplace_back(rec.step, rec.n_active);
    return curve;
}

RunSummary summarize(const Trace& trace) {
    RunSummary s;
    s.scheduler = trace.scheduler;
    s.seed = trace.seed;
    s.gen_len = trace.gen_len;
    s.total_steps = static_cast<int>(trace.steps.size());
    s.denoiser_calls = trace.denoiser_calls;
    s.total_cost = trace.total_cost;
    s.gather_events = trace.gather_events;
    s.final_segments = trace.final_segments;
    for (const auto& rec : trace.steps) ++s.tokens_per_step[rec.l_snapped];
    try {
        s.flip_rate = flip_rate(trace);
    } catch (const std::invalid_argument&) {
        s.flip_rate = 0.0;  // short runs may skip the mid window entirely
    }
    return s;
}

double exact_match_fraction(std::span<const TokenId> final_tokens, std::size_t prompt_len,
                            std::span<const TokenId> target) {
    const std::size_t gen = final_tokens.size() - prompt_len;
    if (gen == 0) return 1.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < gen && i < target.size(); ++i)
        if (final_tokens[prompt_len + i] == target[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(gen);
}

}  // namespace lsp
