#include "lsp/ngram_denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace lsp {

namespace {
constexpr TokenId kMissing = -2;  // context slot outside the sequence
}

std::string NGramDenoiser::key(std::span<const TokenId> ctx) {
    std::string k(ctx.size() * sizeof(TokenId), '\0');
    std::memcpy(k.data(), ctx.data(), k.size());
    return k;
}

NGramDenoiser NGramDenoiser::fit(const std::vector<std::string>& corpus_lines,
                                 const Tokenizer& tok, int order, double add_k, double lambda) {
    if (corpus_lines.empty()) throw std::invalid_argument("ngram_fit: empty corpus");
    if (order < 2) throw std::invalid_argument("ngram_fit: order must be >= 2");
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("ngram_fit: lambda must be in [0, 1]");

    NGramDenoiser nd;
    nd.order_ = order;
    nd.add_k_ = add_k;
    nd.lambda_ = lambda;
    nd.vocab_ = tok.vocab_size();
    nd.mask_ = tok.mask_id();

    const int ctx_len = order - 1;
    for (const auto& line : corpus_lines) {
        const auto ids = tok.tokenize(line);
        const int n = static_cast<int>(ids.size());
        for (int i = ctx_len; i < n; ++i) {
            std::span<const TokenId> ctx(ids.data() + i - ctx_len, static_cast<std::size_t>(ctx_len));
            auto& cc = nd.forward_[key(ctx)];
            ++cc.next[ids[i]];
            ++cc.total;
        }
        for (int i = 0; i + ctx_len < n; ++i) {
            std::span<const TokenId> ctx(ids.data() + i + 1, static_cast<std::size_t>(ctx_len));
            auto& cc = nd.backward_[key(ctx)];
            ++cc.next[ids[i]];
            ++cc.total;
        }
    }
    return nd;
}

double NGramDenoiser::lookup(const Table& table, std::span<const TokenId> ctx, TokenId v) const {
    const double V = predictable_vocab();
    auto it = table.find(key(ctx));
    int c = 0, total = 0;
    if (it != table.end()) {
        total = it->second.total;
        auto jt = it->second.next.find(v);
        if (jt != it->second.next.end()) c = jt->second;
    }
    if (total == 0 && add_k_ == 0.0) return 1.0 / V;
    return (c + add_k_) / (total + add_k_ * V);
}

double NGramDenoiser::prob_forward(std::span<const TokenId> context, TokenId v) const {
    return lookup(forward_, context, v);
}

double NGramDenoiser::prob_backward(std::span<const TokenId> context, TokenId v) const {
    return lookup(backward_, context, v);
}

LogitMatrix NGramDenoiser::predict(const GenView& view, int step, std::uint64_t seed) const {
    (void)step;
    (void)seed;  // pure function of the view
    const int n = static_cast<int>(view.active_positions.size());
    const int ctx_len = order_ - 1;
    const int total_len = static_cast<int>(view.tokens.size());
    LogitMatrix logits(n, vocab_, -1e30);

    auto fill_dist = [&](const Table& table, std::span<const TokenId> ctx,
                         std::vector<double>& out) {
        const double V = predictable_vocab();
        auto it = table.find(key(ctx));
        const int total = (it != table.end()) ? it->second.total : 0;
        double base;
        if (total == 0 && add_k_ == 0.0)
            base = 1.0 / V;
        else
            base = add_k_ / (total + add_k_ * V);
        std::fill(out.begin(), out.end(), base);
        if (it != table.end())
            for (auto& [v, c] : it->second.next) out[v] = (c + add_k_) / (total + add_k_ * V);
        out[mask_] = 0.0;
    };

    // Forward pass; masked context slots to the left use proposals already
    // made earlier in this same pass.
    std::vector<TokenId> proposal(view.tokens.size(), kMissing);
    std::vector<std::vector<double>> fwd(n, std::vector<double>(vocab_));
    std::vector<TokenId> ctx(static_cast<std::size_t>(ctx_len));
    for (int r = 0; r < n; ++r) {
        const int pos = view.active_positions[r];
        for (int j = 0; j < ctx_len; ++j) {
            const int q = pos - ctx_len + j;
            if (q < 0)
                ctx[j] = kMissing;
            else if (view.committed[q])
                ctx[j] = view.tokens[q];
            else
                ctx[j] = proposal[q];  // kMissing if never proposed
        }
        fill_dist(forward_, ctx, fwd[r]);
        TokenId best = 0;
        for (int v = 1; v < vocab_; ++v)
            if (fwd[r][v] > fwd[r][best]) best = v;
        proposal[pos] = best;
    }

    // Backward pass; right context comes from committed tokens or the
    // forward-pass top-1 proposals, uniform beyond the sequence end.
    std::vector<double> bwd(vocab_);
    for (int r = 0; r < n; ++r) {
        const int pos = view.active_positions[r];
        for (int j = 0; j < ctx_len; ++j) {
            const int q = pos + 1 + j;
            if (q >= total_len)
                ctx[j] = kMissing;
            else if (view.committed[q])
                ctx[j] = view.tokens[q];
            else
                ctx[j] = proposal[q];
        }
        fill_dist(backward_, ctx, bwd);
        auto row = logits.row(r);
        for (int v = 0; v < vocab_; ++v) {
            if (v == mask_) continue;
            const double p = lambda_ * fwd[r][v] + (1.0 - lambda_) * bwd[v];
            row[v] = std::log(std::max(p, 1e-300));
        }
    }
    return logits;
}

double NGramDenoiser::perplexity(std::span<const TokenId> seq) const {
    const int ctx_len = order_ - 1;
    const int n = static_cast<int>(seq.size());
    if (n <= ctx_len) return static_cast<double>(predictable_vocab());
    double log_sum = 0.0;
    int count = 0;
    for (int i = ctx_len; i < n; ++i) {
        std::span<const TokenId> ctx(seq.data() + i - ctx_len, static_cast<std::size_t>(ctx_len));
        log_sum += std::log(std::max(prob_forward(ctx, seq[i]), 1e-300));
        ++count;
    }
    return std::exp(-log_sum / count);
}

}  // namespace lsp
