#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lsp/types.hpp"

namespace lsp {

// Margin per active position plus its running prefix-minimum.
// prefix_min[m-1] = min of values[0..m-1]; non-increasing by construction.
struct MarginArray {
    std::vector<double> values;
    std::vector<double> prefix_min;
};

// Fractional sizing bounds for the acceptance interval plus the absolute
// stability floor that stands in for the adaptive threshold.
struct SizingBounds {
    double alpha = 0.25;
    double beta = 0.50;
    double tau_floor = 0.0;
};

// Per-position argmax token and top1-minus-top2 margin.
struct Proposal {
    std::vector<TokenId> top1_ids;
    std::vector<double> margins;
};

// Throws std::invalid_argument when the vocabulary has fewer than two
// entries (second max undefined).
Proposal propose(const LogitMatrix& logits);

MarginArray make_margin_array(std::span<const double> margins);
MarginArray margins(const LogitMatrix& logits);

// Largest m with prefix_min[m-1] > tau; 0 when the first margin fails.
std::size_t run_length(const MarginArray& ma, double tau);

// Largest m in [ceil(alpha*n), floor(beta*n)] whose prefix-min clears the
// floor strictly; 0 when the feasible set is empty (caller snaps / falls
// back). One pass over prefix_min; `comparisons`, when given, counts the
// margin comparisons performed.
std::size_t select_block_length(const MarginArray& ma, std::size_t n, const SizingBounds& bounds,
                                std::size_t* comparisons = nullptr);

}  // namespace lsp
