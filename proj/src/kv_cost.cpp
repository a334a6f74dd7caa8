#include "lsp/kv_cost.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lsp {

CacheModel::CacheModel(std::size_t prompt_len) {
    if (prompt_len > 0) segments_.emplace_back(0, static_cast<int>(prompt_len) - 1);
}

bool CacheModel::is_committed(int pos) const {
    for (auto& [s, e] : segments_)
        if (pos >= s && pos <= e) return true;
    return false;
}

bool CacheModel::append(const std::vector<int>& positions) {
    if (positions.empty()) throw std::invalid_argument("cache_append: empty position set");
    for (int p : positions)
        if (is_committed(p))
            throw std::invalid_argument("cache_append: position " + std::to_string(p) +
                                        " already committed");

    bool internally_contiguous = true;
    for (std::size_t i = 1; i < positions.size(); ++i)
        if (positions[i] != positions[i - 1] + 1) internally_contiguous = false;

    const bool extends_rightmost =
        segments_.empty() || positions.front() == segments_.back().second + 1;
    const bool gather = !internally_contiguous || !extends_rightmost;
    if (gather) ++gather_events_;
    ++append_count_;

    for (int p : positions) {
        // insert keeping segments sorted, then merge with neighbors
        auto it = std::lower_bound(segments_.begin(), segments_.end(), std::make_pair(p, p));
        it = segments_.insert(it, {p, p});
        if (it != segments_.begin()) {
            auto prev = std::prev(it);
            if (prev->second + 1 == it->first) {
                prev->second = it->second;
                it = segments_.erase(it);
                it = std::prev(it);
            }
        }
        auto next = std::next(it);
        if (next != segments_.end() && it->second + 1 == next->first) {
            it->second = next->second;
            segments_.erase(next);
        }
    }
    return gather;
}

std::uint64_t attention_cost(std::size_t frozen_len, std::size_t active_len) {
    return static_cast<std::uint64_t>(active_len) * (frozen_len + active_len);
}

}  // namespace lsp
