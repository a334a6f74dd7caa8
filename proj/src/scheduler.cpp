#include "lsp/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lsp {

SchedulerKind parse_scheduler_kind(const std::string& name) {
    if (name == "lsp") return SchedulerKind::lsp;
    if (name == "full") return SchedulerKind::full;
    if (name == "fixed_prefix") return SchedulerKind::fixed_prefix;
    if (name == "scattered_margin") return SchedulerKind::scattered_margin;
    throw std::invalid_argument(
        "scheduler: expected lsp|full|fixed_prefix|scattered_margin, got '" + name + "'");
}

const char* scheduler_kind_name(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::lsp: return "lsp";
        case SchedulerKind::full: return "full";
        case SchedulerKind::fixed_prefix: return "fixed_prefix";
        case SchedulerKind::scattered_margin: return "scattered_margin";
    }
    return "?";
}

SchedulerEngine::SchedulerEngine(std::span<const TokenId> prompt, const Denoiser& denoiser,
                                 const DelimiterSet& dset, const SchedulerConfig& cfg)
    : denoiser_(denoiser), dset_(dset), cfg_(cfg), cache_(prompt.size()) {
    if (cfg.gen_len < 1) throw std::invalid_argument("scheduler: gen_len must be >= 1");
    if (cfg.kind == SchedulerKind::fixed_prefix && cfg.fixed_k < 1)
        throw std::invalid_argument("scheduler: fixed_prefix k must be >= 1");

    prompt_len_ = prompt.size();
    tokens_.assign(prompt.begin(), prompt.end());
    tokens_.resize(prompt_len_ + cfg.gen_len, denoiser.mask_id());
    committed_.assign(tokens_.size(), 0);
    std::fill(committed_.begin(), committed_.begin() + static_cast<std::ptrdiff_t>(prompt_len_), 1);
    active_count_ = cfg.gen_len;
    seq_ = make_sequence(prompt, cfg.gen_len, denoiser.mask_id());

    prev_top1_.assign(tokens_.size(), -1);
    prev_active_.assign(tokens_.size(), 0);

    trace_.scheduler = scheduler_kind_name(cfg.kind);
    trace_.seed = cfg.seed;
    trace_.gen_len = static_cast<int>(cfg.gen_len);
    trace_.prompt_len = static_cast<int>(prompt_len_);
}

std::vector<int> SchedulerEngine::active_positions() const {
    std::vector<int> out;
    out.reserve(active_count_);
    for (std::size_t p = prompt_len_; p < tokens_.size(); ++p)
        if (!committed_[p]) out.push_back(static_cast<int>(p));
    return out;
}

void SchedulerEngine::commit(const std::vector<int>& positions, std::span<const TokenId> ids) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const auto p = static_cast<std::size_t>(positions[i]);
        if (committed_[p]) throw std::logic_error("scheduler: double commit");
        tokens_[p] = ids[i];
        committed_[p] = 1;
    }
    active_count_ -= positions.size();
}

const StepRecord& SchedulerEngine::step() {
    if (done()) throw std::logic_error("scheduler: step() after completion");

    const std::vector<int> active = active_positions();
    const auto n = active.size();

    GenView view{tokens_, committed_, active, prompt_len_};
    const LogitMatrix logits = denoiser_.predict(view, step_idx_, cfg_.seed);
    ++trace_.denoiser_calls;
    if (static_cast<std::size_t>(logits.rows) != n)
        throw std::runtime_error("scheduler: denoiser returned wrong row count");

    const Proposal prop = propose(logits);

    StepRecord rec;
    rec.step = step_idx_ + 1;
    rec.n_active = static_cast<int>(n);
    rec.margins = prop.margins;
    rec.cost = attention_cost(tokens_.size() - n, n);

    for (std::size_t r = 0; r < n; ++r) {
        const int pos = active[r];
        if (prev_active_[pos]) {
            ++rec.compared;
            if (prop.top1_ids[r] != prev_top1_[pos]) ++rec.flips;
        }
    }

    // Pick the commit set.
    std::vector<int> commit_rows;  // indices into the active list
    switch (cfg_.kind) {
        case SchedulerKind::lsp: {
            const MarginArray ma = make_margin_array(prop.margins);
            const std::size_t l_prime = select_block_length(ma, n, cfg_.bounds);
            std::size_t l = snap({prop.top1_ids.data(), l_prime}, dset_, cfg_.snap);
            if (l == 0) l = 1;  // fallback to ensure progress
            if (l > n)
                throw std::logic_error("scheduler: commit length " + std::to_string(l) +
                                       " exceeds active length " + std::to_string(n));
            rec.l_prime = static_cast<int>(l_prime);
            rec.l_snapped = static_cast<int>(l);
            commit_rows.resize(l);
            std::iota(commit_rows.begin(), commit_rows.end(), 0);
            break;
        }
        case SchedulerKind::fixed_prefix: {
            const std::size_t l = std::min(cfg_.fixed_k, n);
            rec.l_prime = rec.l_snapped = static_cast<int>(l);
            commit_rows.resize(l);
            std::iota(commit_rows.begin(), commit_rows.end(), 0);
            break;
        }
        case SchedulerKind::full: {
            // One acceptance per step: the globally most confident position,
            // leftmost on ties.
            std::size_t best = 0;
            for (std::size_t r = 1; r < n; ++r)
                if (prop.margins[r] > prop.margins[best]) best = r;
            rec.l_prime = rec.l_snapped = 1;
            commit_rows = {static_cast<int>(best)};
            break;
        }
        case SchedulerKind::scattered_margin: {
            // Same range-and-floor sizing as LSP, applied to the sorted
            // margins, then the top-m positions from anywhere.
            const auto lo =
                static_cast<std::size_t>(std::ceil(cfg_.bounds.alpha * static_cast<double>(n)));
            const auto hi =
                static_cast<std::size_t>(std::floor(cfg_.bounds.beta * static_cast<double>(n)));
            std::size_t cleared = 0;
            for (double d : prop.margins)
                if (d >= cfg_.bounds.tau_floor) ++cleared;
            std::size_t m = std::max(std::max<std::size_t>(1, lo), std::min(cleared, hi));
            m = std::min(m, n);

            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return prop.margins[a] > prop.margins[b]; });
            commit_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
            std::sort(commit_rows.begin(), commit_rows.end());
            rec.l_prime = rec.l_snapped = static_cast<int>(m);
            break;
        }
    }

    std::vector<int> positions;
    std::vector<TokenId> ids;
    positions.reserve(commit_rows.size());
    ids.reserve(commit_rows.size());
    for (int r : commit_rows) {
        positions.push_back(active[r]);
        ids.push_back(prop.top1_ids[r]);
    }
    rec.committed_positions = positions;
    rec.committed_ids = ids;

    const bool prefix_kind =
        cfg_.kind == SchedulerKind::lsp || cfg_.kind == SchedulerKind::fixed_prefix;
    if (prefix_kind) seq_ = commit_prefix(seq_, ids);
    commit(positions, ids);
    rec.gather_event = cache_.append(positions);
    cache_.add_cost(rec.cost);

    std::fill(prev_active_.begin(), prev_active_.end(), 0);
    for (std::size_t r = 0; r < n; ++r) {
        prev_top1_[active[r]] = prop.top1_ids[r];
        prev_active_[active[r]] = 1;
    }

    ++step_idx_;
    trace_.steps.push_back(std::move(rec));
    return trace_.steps.back();
}

Trace SchedulerEngine::finish() {
    trace_.total_cost = cache_.cost_units();
    trace_.gather_events = cache_.gather_events();
    trace_.final_segments = static_cast<int>(cache_.segments().size());
    return trace_;
}

RunResult run(std::span<const TokenId> prompt, const Denoiser& denoiser, const DelimiterSet& dset,
              const SchedulerConfig& cfg) {
    SchedulerEngine engine(prompt, denoiser, dset, cfg);
    std::size_t guard = 0;
    while (!engine.done()) {
        engine.step();
        if (++guard > cfg.gen_len)
            throw std::logic_error("scheduler: exceeded the gen_len step bound");
    }
    RunResult result;
    result.trace = engine.finish();
    result.final_tokens = engine.tokens();
    return result;
}

}  // namespace lsp
