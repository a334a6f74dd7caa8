#pragma once

#include <cstdint>
#include <span>

#include "lsp/types.hpp"

namespace lsp {

// Read-only view of the full sequence handed to a denoiser. For prefix
// schedulers the committed region is exactly tokens[0 .. prompt_len + committed);
// scattered baselines may have committed positions anywhere, which is why the
// per-position mask travels along.
struct GenView {
    std::span<const TokenId> tokens;          // full sequence, mask_id at uncommitted slots
    std::span<const std::uint8_t> committed;  // one flag per position
    std::span<const int> active_positions;    // ascending absolute indices
    std::size_t prompt_len = 0;
};

// One logit row per active position, deterministic in (view, step, seed).
class Denoiser {
public:
    virtual ~Denoiser() = default;
    virtual LogitMatrix predict(const GenView& view, int step, std::uint64_t seed) const = 0;
    virtual int vocab_size() const = 0;
    virtual TokenId mask_id() const = 0;
};

// Wrapper that counts predict() invocations; used to verify the single-pass
// contract of the scheduler loop.
class CountingDenoiser final : public Denoiser {
public:
    explicit CountingDenoiser(const Denoiser& inner) : inner_(inner) {}

    LogitMatrix predict(const GenView& view, int step, std::uint64_t seed) const override {
        ++calls_;
        return inner_.predict(view, step, seed);
    }
    int vocab_size() const override { return inner_.vocab_size(); }
    TokenId mask_id() const override { return inner_.mask_id(); }

    std::uint64_t calls() const { return calls_; }

private:
    const Denoiser& inner_;
    mutable std::uint64_t calls_ = 0;
};

}  // namespace lsp
