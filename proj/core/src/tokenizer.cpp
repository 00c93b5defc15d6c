#include "signdir/tokenizer.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>

#include "signdir/error.hpp"

namespace signdir {
namespace {

bool is_ascii(std::string_view text) {
    return std::all_of(text.begin(), text.end(),
                       [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

icu::UnicodeString to_unicode(std::string_view utf8) {
    return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

std::string to_utf8(const icu::UnicodeString& text) {
    std::string out;
    text.toUTF8String(out);
    return out;
}

UChar32 single_code_point(std::string_view utf8, const char* what) {
    const icu::UnicodeString u = to_unicode(utf8);
    if (u.countChar32() != 1) {
        throw Error(ErrorCode::config,
                    std::string(what) + " must be a single character, got '" + std::string(utf8) + "'");
    }
    return u.char32At(0);
}

}  // namespace

std::size_t code_point_count(std::string_view utf8) {
    if (is_ascii(utf8)) return utf8.size();
    return static_cast<std::size_t>(to_unicode(utf8).countChar32());
}

void TokenizerConfig::validate() const {
    if (mode == TokenizerMode::delimiter_separated) {
        single_code_point(delimiter, "delimiter");
        if (!compound_table.empty()) {
            throw Error(ErrorCode::config, "compound_table must be empty in delimiter-separated mode");
        }
    }
    std::set<std::string> seen;
    for (const auto& entry : compound_table) {
        if (code_point_count(entry) < 2) {
            throw Error(ErrorCode::config,
                        "compound sign '" + entry + "' must have at least 2 characters");
        }
        if (!seen.insert(entry).second) {
            throw Error(ErrorCode::config, "duplicate compound sign '" + entry + "'");
        }
    }
    for (const auto& mark : strip_marks) single_code_point(mark, "strip mark");
}

struct Tokenizer::Impl {
    TokenizerConfig config;
    std::unordered_set<UChar32> strip;
    bool strip_has_non_ascii = false;
    UChar32 delimiter = U' ';
    // Folded compounds, longest first; ties keep table order.
    std::vector<icu::UnicodeString> compounds;
    std::vector<std::string> compounds_utf8;
    mutable std::unique_ptr<icu::BreakIterator> graphemes;

    explicit Impl(TokenizerConfig cfg) : config(std::move(cfg)) {
        config.validate();
        for (const auto& mark : config.strip_marks) {
            const UChar32 cp = single_code_point(mark, "strip mark");
            strip.insert(cp);
            if (cp >= 0x80) strip_has_non_ascii = true;
        }
        if (config.mode == TokenizerMode::delimiter_separated) {
            delimiter = single_code_point(config.delimiter, "delimiter");
        }

        std::vector<std::pair<int32_t, icu::UnicodeString>> sorted;
        for (const auto& entry : config.compound_table) {
            icu::UnicodeString u = to_unicode(entry);
            if (config.case_folding) u.toLower(icu::Locale::getRoot());
            sorted.emplace_back(u.countChar32(), u);
        }
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (auto& [len, u] : sorted) {
            if (std::find(compounds.begin(), compounds.end(), u) != compounds.end()) {
                throw Error(ErrorCode::config,
                            "compound signs '" + to_utf8(u) + "' collide after case folding");
            }
            compounds.push_back(u);
            compounds_utf8.push_back(to_utf8(u));
        }

        UErrorCode status = U_ZERO_ERROR;
        graphemes.reset(icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(), status));
        if (U_FAILURE(status) || !graphemes) {
            throw Error(ErrorCode::config, std::string("ICU grapheme iterator unavailable: ") +
                                               u_errorName(status));
        }
    }

    icu::UnicodeString normalize_unicode(std::string_view word) const {
        icu::UnicodeString u = to_unicode(word);
        if (!strip.empty()) {
            icu::UnicodeString kept;
            for (int32_t i = 0; i < u.length();) {
                const UChar32 cp = u.char32At(i);
                if (!strip.count(cp)) kept.append(cp);
                i = u.moveIndex32(i, 1);
            }
            u = kept;
        }
        if (config.case_folding) u.toLower(icu::Locale::getRoot());
        return u;
    }

    std::string normalize_ascii(std::string_view word) const {
        std::string out;
        out.reserve(word.size());
        for (char c : word) {
            if (!strip.empty() && strip.count(static_cast<unsigned char>(c))) continue;
            if (config.case_folding && c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            out.push_back(c);
        }
        return out;
    }

    std::vector<std::string> split_delimited(const std::string& text) const {
        std::vector<std::string> out;
        const icu::UnicodeString u = to_unicode(text);
        icu::UnicodeString current;
        for (int32_t i = 0; i < u.length();) {
            const UChar32 cp = u.char32At(i);
            if (cp == delimiter) {
                if (!current.isEmpty()) out.push_back(to_utf8(current));
                current.remove();
            } else {
                current.append(cp);
            }
            i = u.moveIndex32(i, 1);
        }
        if (!current.isEmpty()) out.push_back(to_utf8(current));
        return out;
    }

    std::vector<std::string> split_ascii(const std::string& text) const {
        std::vector<std::string> out;
        out.reserve(text.size());
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t taken = 0;
            for (std::size_t k = 0; k < compounds_utf8.size(); ++k) {
                const std::string& c = compounds_utf8[k];
                if (text.compare(pos, c.size(), c) == 0) {
                    taken = c.size();
                    break;
                }
            }
            if (taken == 0) taken = 1;
            out.emplace_back(text.substr(pos, taken));
            pos += taken;
        }
        return out;
    }

    std::vector<std::string> split_graphemes(const icu::UnicodeString& u) const {
        std::vector<std::string> out;
        graphemes->setText(u);
        int32_t pos = 0;
        const int32_t end = u.length();
        while (pos < end) {
            int32_t next = -1;
            for (const auto& c : compounds) {
                const int32_t len = c.length();
                if (pos + len <= end && u.compare(pos, len, c) == 0 &&
                    graphemes->isBoundary(pos + len)) {
                    next = pos + len;
                    break;
                }
            }
            if (next < 0) next = graphemes->following(pos);
            if (next == icu::BreakIterator::DONE || next <= pos) next = end;
            out.push_back(to_utf8(icu::UnicodeString(u, pos, next - pos)));
            pos = next;
        }
        return out;
    }

    std::vector<std::string> tokenize(std::string_view word) const {
        if (config.mode == TokenizerMode::delimiter_separated) {
            return split_delimited(normalize(word));
        }
        if (is_ascii(word)) {
            return split_ascii(normalize_ascii(word));
        }
        return split_graphemes(normalize_unicode(word));
    }

    std::string normalize(std::string_view word) const {
        if (is_ascii(word)) return normalize_ascii(word);
        return to_utf8(normalize_unicode(word));
    }
};

Tokenizer::Tokenizer(TokenizerConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
Tokenizer::~Tokenizer() = default;
Tokenizer::Tokenizer(Tokenizer&&) noexcept = default;
Tokenizer& Tokenizer::operator=(Tokenizer&&) noexcept = default;

const TokenizerConfig& Tokenizer::config() const noexcept { return impl_->config; }

std::string Tokenizer::normalize(std::string_view word) const { return impl_->normalize(word); }

std::vector<std::string> Tokenizer::operator()(std::string_view word) const {
    return impl_->tokenize(word);
}

std::vector<std::string> tokenize(std::string_view word, const TokenizerConfig& config) {
    return Tokenizer(config)(word);
}

}  // namespace signdir
