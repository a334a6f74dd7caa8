#include "lsp/oracle_denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lsp/rng.hpp"

namespace lsp {

namespace {
constexpr std::uint64_t kSaltNoise = 1;
constexpr std::uint64_t kSaltFlip = 2;
constexpr std::uint64_t kSaltAlt = 3;
}  // namespace

OracleDenoiser::OracleDenoiser(std::vector<TokenId> target, int vocab_size, TokenId mask_id,
                               OracleParams params)
    : target_(std::move(target)), vocab_(vocab_size), mask_(mask_id), params_(params) {
    if (vocab_ < 3) throw std::invalid_argument("OracleDenoiser: vocab size must be >= 3");
    if (params_.gamma <= 0.0 || params_.gamma > 1.0)
        throw std::invalid_argument("OracleDenoiser: gamma must be in (0, 1]");
    for (TokenId t : target_)
        if (t == mask_ || t < 0 || t >= vocab_)
            throw std::invalid_argument("OracleDenoiser: target contains invalid token");
}

LogitMatrix OracleDenoiser::predict(const GenView& view, int step, std::uint64_t seed) const {
    const int n = static_cast<int>(view.active_positions.size());
    LogitMatrix logits(n, vocab_, -1000.0);

    // End of the contiguous committed run starting at position 0.
    std::size_t anchor_end = 0;
    while (anchor_end < view.committed.size() && view.committed[anchor_end]) ++anchor_end;

    for (int r = 0; r < n; ++r) {
        const auto pos = static_cast<std::size_t>(view.active_positions[r]);
        if (pos < view.prompt_len || pos - view.prompt_len >= target_.size())
            throw std::runtime_error("OracleDenoiser: target exhausted at position " +
                                     std::to_string(pos));
        const TokenId truth = target_[pos - view.prompt_len];

        const double dist = static_cast<double>(pos - anchor_end);
        bool internal = false;
        if (pos > 0 && view.committed[pos - 1] && pos - 1 >= anchor_end) internal = true;
        if (pos + 1 < view.committed.size() && view.committed[pos + 1]) internal = true;

        double margin = params_.mu * std::pow(params_.gamma, dist) - (internal ? params_.phi : 0.0);
        if (params_.sigma > 0.0)
            margin += params_.sigma * gaussian(hash_mix(seed, pos, step, kSaltNoise));
        margin = std::max(0.0, margin);

        // Alternative token: deterministic, never the truth or the mask.
        TokenId alt = static_cast<TokenId>(hash_mix(seed, pos, step, kSaltAlt) %
                                           static_cast<std::uint64_t>(vocab_));
        while (alt == truth || alt == mask_) alt = (alt + 1) % vocab_;

        TokenId top = truth;
        if (params_.flip_prob > 0.0) {
            const double p_flip = params_.flip_prob / (1.0 + std::exp(margin));
            if (uniform01(hash_mix(seed, pos, step, kSaltFlip)) < p_flip) top = alt;
        }
        const TokenId second = (top == truth) ? alt : truth;

        auto row = logits.row(r);
        row[top] = margin;
        row[second] = 0.0;
    }
    return logits;
}

}  // namespace lsp
