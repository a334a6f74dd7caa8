#pragma once

#include <cstddef>
#include <span>

#include "lsp/tokenizer.hpp"
#include "lsp/types.hpp"

namespace lsp {

// snap:   trim to the last delimiter within the window; keep the full
//         candidate when no delimiter is in reach.
// strict: literal max(L_min, last qualifying delimiter) formula, which
//         collapses to L_min when no delimiter is in the window.
// off:    pass the candidate through unchanged (snapping ablation).
enum class SnapMode { snap, strict, off };

struct SnapConfig {
    std::size_t l_min = 1;
    std::size_t window = 16;
    SnapMode mode = SnapMode::snap;
};

SnapMode parse_snap_mode(const std::string& name);  // throws on unknown name
const char* snap_mode_name(SnapMode mode);

// Trims a candidate block of proposed tokens to a structural boundary.
// Returns the final commit length; 0 means the caller must apply the
// one-token fallback.
std::size_t snap(std::span<const TokenId> proposal_prefix, const DelimiterSet& dset,
                 const SnapConfig& cfg);

}  // namespace lsp
