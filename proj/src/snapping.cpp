#include "lsp/snapping.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsp {

SnapMode parse_snap_mode(const std::string& name) {
    if (name == "snap") return SnapMode::snap;
    if (name == "strict") return SnapMode::strict;
    if (name == "off") return SnapMode::off;
    throw std::invalid_argument("snap_mode: expected snap|strict|off, got '" + name + "'");
}

const char* snap_mode_name(SnapMode mode) {
    switch (mode) {
        case SnapMode::snap: return "snap";
        case SnapMode::strict: return "strict";
        case SnapMode::off: return "off";
    }
    return "?";
}

std::size_t snap(std::span<const TokenId> proposal_prefix, const DelimiterSet& dset,
                 const SnapConfig& cfg) {
    const std::size_t l_prime = proposal_prefix.size();
    if (cfg.mode == SnapMode::off) return l_prime;

    // Largest j <= L' with y_j in D and L' - j <= W (1-based j).
    std::size_t j_best = 0;
    const std::size_t j_lo = l_prime > cfg.window ? l_prime - cfg.window : 1;
    for (std::size_t j = l_prime; j >= j_lo && j > 0; --j) {
        if (dset.contains(proposal_prefix[j - 1])) {
            j_best = j;
            break;
        }
    }

    if (cfg.mode == SnapMode::strict) return std::max(cfg.l_min, j_best);

    // mode == snap
    if (l_prime < cfg.l_min) return l_prime;  // too short to trim; 0 signals fallback
    if (j_best == 0) return l_prime;          // no boundary in the window, keep candidate
    return std::max(cfg.l_min, j_best);
}

}  // namespace lsp
