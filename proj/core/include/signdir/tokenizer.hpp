#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace signdir {

enum class TokenizerMode {
    per_character,        // extended grapheme clusters, with compound signs
    delimiter_separated,  // explicit sign tokens, e.g. "342 176 87"
};

// How a written word is split into signs. Compound signs (digraphs such as
// Spanish "ch"/"ll", ligatures, conjuncts) are matched longest-first.
struct TokenizerConfig {
    TokenizerMode mode = TokenizerMode::per_character;
    std::string delimiter = " ";              // one code point; delimiter mode only
    std::vector<std::string> compound_table;  // each entry >= 2 code points, unique
    bool case_folding = true;                 // lower-case using the root locale
    std::vector<std::string> strip_marks;     // single code points deleted before tokenizing

    // Throws Error(ErrorCode::config) when an invariant is violated.
    void validate() const;
};

// Reusable tokenizer. Holds the grapheme break iterator and the compound
// table sorted for longest-match lookup, so it is cheap to apply per line.
class Tokenizer {
public:
    explicit Tokenizer(TokenizerConfig config);
    ~Tokenizer();
    Tokenizer(Tokenizer&&) noexcept;
    Tokenizer& operator=(Tokenizer&&) noexcept;

    const TokenizerConfig& config() const noexcept;

    // Applies strip_marks and case folding only.
    std::string normalize(std::string_view word) const;

    std::vector<std::string> operator()(std::string_view word) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<std::string> tokenize(std::string_view word, const TokenizerConfig& config);

// Number of Unicode code points in a UTF-8 string.
std::size_t code_point_count(std::string_view utf8);

}  // namespace signdir
