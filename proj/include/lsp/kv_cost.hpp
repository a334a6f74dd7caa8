#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lsp/types.hpp"

namespace lsp {

// Cache layout model: ordered disjoint ranges of committed absolute
// positions. LSP keeps a single segment for the whole run; scattered
// acceptance fragments it, and every fragmenting step counts as one gather
// event.
class CacheModel {
public:
    CacheModel() = default;
    // Seeds the cache with the prompt as positions [0, prompt_len).
    explicit CacheModel(std::size_t prompt_len);

    // Inserts a set of previously-uncommitted positions (ascending).
    // Returns true when this step fragmented the cache: the set itself is
    // non-contiguous or it does not extend the rightmost segment.
    // Throws std::invalid_argument on a double commit.
    bool append(const std::vector<int>& positions);

    const std::vector<std::pair<int, int>>& segments() const { return segments_; }
    std::uint64_t append_count() const { return append_count_; }
    std::uint64_t gather_events() const { return gather_events_; }
    std::uint64_t cost_units() const { return cost_units_; }
    void add_cost(std::uint64_t units) { cost_units_ += units; }

    bool is_committed(int pos) const;

private:
    std::vector<std::pair<int, int>> segments_;  // inclusive [start, end], sorted, disjoint
    std::uint64_t append_count_ = 0;
    std::uint64_t gather_events_ = 0;
    std::uint64_t cost_units_ = 0;
};

// Attention work proxy: queries over the active suffix attend to the whole
// sequence, so one step costs active_len * (frozen_len + active_len)
// token-pair interactions.
std::uint64_t attention_cost(std::size_t frozen_len, std::size_t active_len);

}  // namespace lsp
