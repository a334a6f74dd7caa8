#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lsp/denoiser.hpp"
#include "lsp/tokenizer.hpp"

namespace lsp::testing {

// Denoiser whose margins and top-1 tokens follow caller-supplied functions
// of (absolute position, step); used to construct adversarial and
// hand-crafted cases.
class ScriptedDenoiser final : public Denoiser {
public:
    std::function<double(int pos, int step)> margin_fn = [](int, int) { return 0.0; };
    std::function<TokenId(int pos, int step)> top_fn;  // defaults to token 0
    int vocab = 8;
    TokenId mask = 7;

    LogitMatrix predict(const GenView& view, int step, std::uint64_t) const override {
        const int n = static_cast<int>(view.active_positions.size());
        LogitMatrix logits(n, vocab, -1000.0);
        for (int r = 0; r < n; ++r) {
            const int pos = view.active_positions[r];
            TokenId top = top_fn ? top_fn(pos, step) : 0;
            TokenId second = (top + 1) % vocab;
            if (second == mask) second = (second + 1) % vocab;
            const double m = std::max(0.0, margin_fn(pos, step));
            auto row = logits.row(r);
            row[top] = m;
            row[second] = 0.0;
        }
        return logits;
    }
    int vocab_size() const override { return vocab; }
    TokenId mask_id() const override { return mask; }
};

inline Tokenizer toy_tokenizer(const std::vector<std::string>& lines,
                               const std::vector<std::string>& delims = {"."}) {
    return Tokenizer::from_corpus(lines, delims);
}

}  // namespace lsp::testing
