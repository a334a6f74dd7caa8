#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lsp/denoiser.hpp"
#include "lsp/kv_cost.hpp"
#include "lsp/sequence.hpp"
#include "lsp/snapping.hpp"
#include "lsp/stability.hpp"

namespace lsp {

enum class SchedulerKind { lsp, full, fixed_prefix, scattered_margin };

SchedulerKind parse_scheduler_kind(const std::string& name);  // throws on unknown name
const char* scheduler_kind_name(SchedulerKind kind);

struct SchedulerConfig {
    SchedulerKind kind = SchedulerKind::lsp;
    std::size_t fixed_k = 1;  // block size for fixed_prefix
    SizingBounds bounds;
    SnapConfig snap;
    std::size_t gen_len = 128;
    std::uint64_t seed = 0;
};

// Per-iteration audit record.
struct StepRecord {
    int step = 0;        // 1-based
    int n_active = 0;    // N_k at step start
    int l_prime = 0;     // candidate block length before snapping
    int l_snapped = 0;   // final commit size
    std::vector<TokenId> committed_ids;
    std::vector<int> committed_positions;  // absolute indices
    std::vector<double> margins;           // per active position, in position order
    int flips = 0;     // top-1 changes vs previous step over overlapping active positions
    int compared = 0;  // number of overlapping positions compared
    std::uint64_t cost = 0;  // attention cost units for this step
    bool gather_event = false;
};

struct Trace {
    std::string scheduler;
    std::uint64_t seed = 0;
    int gen_len = 0;
    int prompt_len = 0;
    std::vector<StepRecord> steps;
    std::uint64_t denoiser_calls = 0;
    std::uint64_t total_cost = 0;
    std::uint64_t gather_events = 0;
    int final_segments = 0;
};

struct RunResult {
    std::vector<TokenId> final_tokens;  // prompt + generated region
    Trace trace;
};

// One generation run. Each step makes exactly one denoiser call, commits at
// least one token, and appends the committed positions to the cache model.
class SchedulerEngine {
public:
    SchedulerEngine(std::span<const TokenId> prompt, const Denoiser& denoiser,
                    const DelimiterSet& dset, const SchedulerConfig& cfg);

    bool done() const { return active_count_ == 0; }
    const StepRecord& step();  // throws when already done

    std::size_t active_len() const { return active_count_; }
    const std::vector<TokenId>& tokens() const { return tokens_; }
    const CacheModel& cache() const { return cache_; }
    const Trace& trace() const { return trace_; }
    const SequenceState& sequence() const { return seq_; }  // prefix schedulers only

    Trace finish();  // fills the trace summary fields

private:
    std::vector<int> active_positions() const;
    void commit(const std::vector<int>& positions, std::span<const TokenId> ids);

    const Denoiser& denoiser_;
    const DelimiterSet& dset_;
    SchedulerConfig cfg_;

    std::vector<TokenId> tokens_;
    std::vector<std::uint8_t> committed_;
    std::size_t prompt_len_ = 0;
    std::size_t active_count_ = 0;
    SequenceState seq_;  // mirrors tokens_/committed_ for prefix topologies

    std::vector<TokenId> prev_top1_;
    std::vector<std::uint8_t> prev_active_;

    CacheModel cache_;
    Trace trace_;
    int step_idx_ = 0;
};

RunResult run(std::span<const TokenId> prompt, const Denoiser& denoiser, const DelimiterSet& dset,
              const SchedulerConfig& cfg);

}  // namespace lsp
