#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lsp/scheduler.hpp"

namespace lsp {

struct RunSummary {
    std::string scheduler;
    std::uint64_t seed = 0;
    int gen_len = 0;
    int total_steps = 0;
    std::uint64_t denoiser_calls = 0;
    std::uint64_t total_cost = 0;
    std::uint64_t gather_events = 0;
    int final_segments = 0;
    double flip_rate = 0.0;  // mid-window, percent
    std::map<int, int> tokens_per_step;  // commit size -> step count
    std::optional<double> exact_match;   // fraction of generated tokens matching the oracle target
    std::optional<double> perplexity;    // n-gram runs only
};

// Percentage of top-1 flips over compared active positions, restricted to
// steps whose completion fraction lies in [window.first, window.second].
// Throws std::invalid_argument when no step falls inside the window.
double flip_rate(const Trace& trace, std::pair<double, double> window = {0.25, 0.75});

// Denoiser-call ratio: baseline calls / run calls. Throws on zero calls.
double speedup(const RunSummary& run, const RunSummary& baseline);

// (step, N_k) pairs; N_k is the active length at step start.
std::vector<std::pair<int, int>> decay_curve(const Trace& trace);

RunSummary summarize(const Trace& trace);

// Fraction of generated tokens equal to the oracle target.
double exact_match_fraction(std::span<const TokenId> final_tokens, std::size_t prompt_len,
                            std::span<const TokenId> target);

}  // namespace lsp
