#pragma once

#include <vector>

#include "lsp/denoiser.hpp"

namespace lsp {

struct OracleParams {
    double mu = 6.0;         // base margin scale
    double gamma = 0.97;     // per-position decay with distance from the frozen boundary
    double sigma = 1.0;      // noise scale on the margin
    double phi = 2.0;        // margin penalty next to internal frozen/masked boundaries
    double flip_prob = 0.5;  // flip probability scale, gated by a logistic of the margin
};

// Synthetic denoiser that knows the ground-truth continuation. Margins decay
// geometrically with distance from the end of the contiguous committed
// prefix; positions touching an internal committed island lose phi. Noise
// and flips are keyed to hash(seed, absolute position, step), so re-draws
// across steps can flip low-margin positions.
class OracleDenoiser final : public Denoiser {
public:
    OracleDenoiser(std::vector<TokenId> target, int vocab_size, TokenId mask_id,
                   OracleParams params = {});

    LogitMatrix predict(const GenView& view, int step, std::uint64_t seed) const override;
    int vocab_size() const override { return vocab_; }
    TokenId mask_id() const override { return mask_; }

    const std::vector<TokenId>& target() const { return target_; }
    const OracleParams& params() const { return params_; }

private:
    std::vector<TokenId> target_;  // indexed by generation position
    int vocab_;
    TokenId mask_;
    OracleParams params_;
};

}  // namespace lsp
