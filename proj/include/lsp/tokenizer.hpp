#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lsp/types.hpp"

namespace lsp {

// Token ids flagged as structural delimiters (punctuation, brackets, ...).
struct DelimiterSet {
    std::vector<std::uint8_t> flags;  // indexed by token id

    bool contains(TokenId t) const {
        return t >= 0 && static_cast<std::size_t>(t) < flags.size() && flags[t] != 0;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto f : flags) n += f;
        return n;
    }
};

// Word-level tokenizer with punctuation split off as single-token symbols.
// The vocabulary is closed over a corpus; ids are contiguous from 0 and the
// mask token takes the last id.
class Tokenizer {
public:
    static const std::vector<std::string>& default_delimiters();

    static Tokenizer from_corpus(const std::vector<std::string>& lines,
                                 const std::vector<std::string>& delimiters = default_delimiters());

    // Throws std::invalid_argument naming the symbol and character position
    // when a surface form is not in the vocabulary.
    std::vector<TokenId> tokenize(std::string_view text) const;
    std::string detokenize(std::span<const TokenId> ids) const;

    TokenId mask_id() const { return mask_id_; }
    int vocab_size() const { return static_cast<int>(surfaces_.size()); }
    const std::string& surface(TokenId id) const;
    TokenId id_of(const std::string& surface) const;  // throws if unknown
    bool has(const std::string& surface) const { return ids_.count(surface) != 0; }

    const DelimiterSet& delimiters() const { return delims_; }
    bool is_delimiter(TokenId id) const { return delims_.contains(id); }

    // Splits raw text into surface pieces without vocabulary lookup.
    static std::vector<std::pair<std::string, std::size_t>> split(std::string_view text);

private:
    std::vector<std::string> surfaces_;
    std::unordered_map<std::string, TokenId> ids_;
    TokenId mask_id_ = -1;
    DelimiterSet delims_;
};

std::vector<std::string> load_lines(const std::string& path);  // throws on missing file

}  // namespace lsp
