#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "lsp/denoiser.hpp"
#include "lsp/tokenizer.hpp"

namespace lsp {

// Bidirectional n-gram denoiser: per-position distribution is an
// interpolation of a forward model (left context) and a backward model
// (right context, read from the current top-1 proposals), both with add-k
// smoothing. Contexts never seen in the corpus fall back to the uniform
// 1/V distribution through the smoothing floor.
class NGramDenoiser final : public Denoiser {
public:
    static NGramDenoiser fit(const std::vector<std::string>& corpus_lines, const Tokenizer& tok,
                             int order = 3, double add_k = 0.5, double lambda = 0.5);

    LogitMatrix predict(const GenView& view, int step, std::uint64_t seed) const override;
    int vocab_size() const override { return vocab_; }
    TokenId mask_id() const override { return mask_; }

    // P(v | preceding order-1 tokens) under the forward table.
    double prob_forward(std::span<const TokenId> context, TokenId v) const;
    // P(v | following order-1 tokens) under the backward table.
    double prob_backward(std::span<const TokenId> context, TokenId v) const;

    // Forward-model perplexity of a token sequence; quality proxy for runs
    // without a ground-truth target.
    double perplexity(std::span<const TokenId> seq) const;

    int order() const { return order_; }
    double add_k() const { return add_k_; }
    double lambda() const { return lambda_; }
    int predictable_vocab() const { return vocab_ - 1; }  // mask excluded

private:
    struct ContextCounts {
        std::unordered_map<TokenId, int> next;
        int total = 0;
    };
    using Table = std::unordered_map<std::string, ContextCounts>;

    static std::string key(std::span<const TokenId> ctx);
    double lookup(const Table& table, std::span<const TokenId> ctx, TokenId v) const;

    Table forward_;
    Table backward_;
    int order_ = 3;
    double add_k_ = 0.5;
    double lambda_ = 0.5;
    int vocab_ = 0;
    TokenId mask_ = -1;
};

}  // namespace lsp
