#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "lsp/types.hpp"

namespace lsp {

// Frozen prefix (prompt + committed tokens) plus fully-masked active suffix.
// frozen grows only by appending; active shrinks only from its front, so
// |frozen| + |active| is constant for the life of a run.
struct SequenceState {
    std::vector<TokenId> frozen;
    std::vector<TokenId> active;  // every entry == mask_id

    std::size_t total_len() const { return frozen.size() + active.size(); }
};

inline SequenceState make_sequence(std::span<const TokenId> prompt, std::size_t gen_len,
                                   TokenId mask_id) {
    SequenceState s;
    s.frozen.assign(prompt.begin(), prompt.end());
    s.active.assign(gen_len, mask_id);
    return s;
}

inline SequenceState commit_prefix(const SequenceState& state, std::span<const TokenId> tokens) {
    if (tokens.empty())
        throw std::invalid_argument("commit_prefix: empty commit");
    if (tokens.size() > state.active.size())
        throw std::invalid_argument("commit_prefix: commit of " + std::to_string(tokens.size()) +
                                    " exceeds active length " + std::to_string(state.active.size()));
    SequenceState next;
    next.frozen = state.frozen;
    next.frozen.insert(next.frozen.end(), tokens.begin(), tokens.end());
    next.active.assign(state.active.begin() + static_cast<std::ptrdiff_t>(tokens.size()),
                       state.active.end());
    return next;
}

}  // namespace lsp
