#include "lsp/tokenizer.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace lsp {

namespace {

constexpr std::string_view kPunct = ".,;:!?()[]{}";
constexpr std::string_view kNoSpaceBefore = ".,;:!?)]}";

bool is_punct_char(char c) { return kPunct.find(c) != std::string_view::npos; }

}  // namespace

const std::vector<std::string>& Tokenizer::default_delimiters() {
    static const std::vector<std::string> d = {".", ",", ";", ":", "!", "?",
                                               "\n", ")", "]", "}"};
    return d;
}

std::vector<std::pair<std::string, std::size_t>> Tokenizer::split(std::string_view text) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (is_punct_char(c)) {
            out.emplace_back(std::string(1, c), i);
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
               !is_punct_char(text[i]))
            ++i;
        out.emplace_back(std::string(text.substr(start, i - start)), start);
    }
    return out;
}

Tokenizer Tokenizer::from_corpus(const std::vector<std::string>& lines,
                                 const std::vector<std::string>& delimiters) {
    Tokenizer tok;
    for (const auto& line : lines) {
        for (auto& [surface, pos] : split(line)) {
            (void)pos;
            if (tok.ids_.emplace(surface, static_cast<TokenId>(tok.surfaces_.size())).second)
                tok.surfaces_.push_back(surface);
        }
    }
    tok.mask_id_ = static_cast<TokenId>(tok.surfaces_.size());
    tok.surfaces_.push_back("[MASK]");
    tok.delims_.flags.assign(tok.surfaces_.size(), 0);
    for (const auto& d : delimiters) {
        auto it = tok.ids_.find(d);
        if (it != tok.ids_.end()) tok.delims_.flags[it->second] = 1;
    }
    // mask_id is never a delimiter
    tok.delims_.flags[tok.mask_id_] = 0;
    return tok;
}

std::vector<TokenId> Tokenizer::tokenize(std::string_view text) const {
    std::vector<TokenId> out;
    for (auto& [surface, pos] : split(text)) {
        auto it = ids_.find(surface);
        if (it == ids_.end())
            throw std::invalid_argument("unknown token '" + surface + "' at position " +
                                        std::to_string(pos));
        out.push_back(it->second);
    }
    return out;
}

std::string Tokenizer::detokenize(std::span<const TokenId> ids) const {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const std::string& s = surface(ids[i]);
        bool attach = s.size() == 1 && kNoSpaceBefore.find(s[0]) != std::string_view::npos;
        if (i > 0 && !attach) out += ' ';
        out += s;
    }
    return out;
}

const std::string& Tokenizer::surface(TokenId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= surfaces_.size())
        throw std::out_of_range("token id " + std::to_string(id) + " out of range");
    return surfaces_[id];
}

TokenId Tokenizer::id_of(const std::string& surface) const {
    auto it = ids_.find(surface);
    if (it == ids_.end()) throw std::invalid_argument("unknown token '" + surface + "'");
    return it->second;
}

std::vector<std::string> load_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace lsp
