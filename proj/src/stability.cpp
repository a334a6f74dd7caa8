#include "lsp/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lsp {

Proposal propose(const LogitMatrix& logits) {
    if (logits.cols < 2)
        throw std::invalid_argument("propose: vocabulary size must be >= 2, got " +
                                    std::to_string(logits.cols));
    Proposal p;
    p.top1_ids.resize(logits.rows);
    p.margins.resize(logits.rows);
    for (int r = 0; r < logits.rows; ++r) {
        auto row = logits.row(r);
        int best = 0;
        double z1 = row[0], z2 = -std::numeric_limits<double>::infinity();
        for (int c = 1; c < logits.cols; ++c) {
            if (row[c] > z1) {
                z2 = z1;
                z1 = row[c];
                best = c;
            } else if (row[c] > z2) {
                z2 = row[c];
            }
        }
        p.top1_ids[r] = best;
        p.margins[r] = z1 - z2;
    }
    return p;
}

MarginArray make_margin_array(std::span<const double> margins) {
    MarginArray ma;
    ma.values.assign(margins.begin(), margins.end());
    ma.prefix_min.resize(ma.values.size());
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ma.values.size(); ++i) {
        m = std::min(m, ma.values[i]);
        ma.prefix_min[i] = m;
    }
    return ma;
}

MarginArray margins(const LogitMatrix& logits) {
    return make_margin_array(propose(logits).margins);
}

std::size_t run_length(const MarginArray& ma, double tau) {
    std::size_t m = 0;
    while (m < ma.prefix_min.size() && ma.prefix_min[m] > tau) ++m;
    return m;
}

std::size_t select_block_length(const MarginArray& ma, std::size_t n, const SizingBounds& bounds,
                                std::size_t* comparisons) {
    if (n != ma.values.size())
        throw std::invalid_argument("select_block_length: n does not match margin array length");
    if (n == 0) return 0;
    const auto lo = static_cast<std::size_t>(std::ceil(bounds.alpha * static_cast<double>(n)));
    const auto hi = static_cast<std::size_t>(std::floor(bounds.beta * static_cast<double>(n)));
    std::size_t cmp = 0;
    std::size_t result = 0;
    // prefix_min is non-increasing, so the first feasible m scanning down
    // from hi is the largest.
    for (std::size_t m = std::min(hi, n); m >= std::max<std::size_t>(lo, 1) && m > 0; --m) {
        ++cmp;
        if (ma.prefix_min[m - 1] > bounds.tau_floor) {
            result = m;
            break;
        }
    }
    if (comparisons) *comparisons = cmp;
    return result;
}

}  // namespace lsp
