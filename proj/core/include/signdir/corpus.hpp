#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "signdir/tokenizer.hpp"

namespace signdir {

using SignId = std::uint32_t;

// Interned sign names. Ids are dense and assigned in first-seen order.
class Signary {
public:
    SignId intern(std::string_view sign);
    std::optional<SignId> find(std::string_view sign) const;
    const std::string& name(SignId id) const { return names_.at(id); }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, SignId> ids_;
};

struct SignSequence {
    std::vector<SignId> signs;
    std::uint64_t weight = 1;

    friend bool operator==(const SignSequence&, const SignSequence&) = default;
};

enum class CountingMode {
    unique_words,        // every sequence counts once
    frequency_weighted,  // sequences carry their corpus frequency
};

std::string_view to_string(CountingMode mode);

enum class DuplicatePolicy {
    reject,  // loaded corpora: unique-words mode holds distinct sequences
    allow,   // resampled or permuted corpora may repeat a sequence
};

// What happened while reading a word list.
struct LoadStats {
    std::size_t lines = 0;
    std::size_t blank_lines = 0;
    std::size_t dropped_short = 0;        // fewer than 2 signs
    std::size_t duplicates = 0;           // merged or dropped repeats
    std::size_t below_min_frequency = 0;  // Format B only
};

// Immutable collection of sign sequences. Storage is flat (one buffer of
// sign ids plus offsets) so resampling kernels can walk it cheaply; the
// signary is shared between a corpus and the corpora derived from it.
class SignCorpus {
public:
    // Validates: every sequence has >= 2 signs, weights >= 1 (== 1 in
    // unique-words mode), no duplicate sequences in unique-words mode unless
    // allowed, and the signary is exactly the set of signs used.
    static SignCorpus from_sequences(std::vector<SignSequence> sequences,
                                     std::shared_ptr<const Signary> signary,
                                     CountingMode mode,
                                     std::string reading_order_note = {},
                                     DuplicatePolicy duplicates = DuplicatePolicy::reject);

    // Interns string signs in first-seen order. Weights default to 1.
    static SignCorpus from_words(const std::vector<std::vector<std::string>>& words,
                                 CountingMode mode = CountingMode::unique_words,
                                 const std::vector<std::uint64_t>& weights = {});

    std::size_t size() const noexcept { return weights_.size(); }
    bool empty() const noexcept { return weights_.empty(); }

    std::span<const SignId> signs(std::size_t i) const {
        return {signs_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::size_t length(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
    std::uint64_t weight(std::size_t i) const { return weights_[i]; }

    const Signary& signary() const noexcept { return *signary_; }
    const std::shared_ptr<const Signary>& signary_ptr() const noexcept { return signary_; }
    CountingMode counting_mode() const noexcept { return mode_; }
    const std::string& reading_order_note() const noexcept { return note_; }

    const LoadStats& load_stats() const noexcept { return stats_; }
    void set_load_stats(const LoadStats& stats) { stats_ = stats; }

    double total_weight() const noexcept { return total_weight_; }
    std::size_t total_signs() const noexcept { return signs_.size(); }
    std::size_t min_length() const noexcept { return min_length_; }
    std::size_t max_length() const noexcept { return max_length_; }
    double mean_length() const noexcept;

    // Order-sensitive 64-bit FNV-1a digest over sign names, sequence
    // boundaries and weights. Used to tie resampling outputs to a corpus.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    SignSequence sequence(std::size_t i) const;
    std::vector<SignSequence> sequences() const;
    std::vector<std::string> sign_names(std::size_t i) const;

    friend bool operator==(const SignCorpus& a, const SignCorpus& b);

private:
    SignCorpus() = default;
    void finalize();

    std::vector<SignId> signs_;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::uint64_t> weights_;
    std::shared_ptr<const Signary> signary_;
    CountingMode mode_ = CountingMode::unique_words;
    std::string note_;
    LoadStats stats_;
    double total_weight_ = 0.0;
    std::size_t min_length_ = 0;
    std::size_t max_length_ = 0;
    std::uint64_t fingerprint_ = 0;
};

enum class WordListFormat {
    word_per_line,    // Format A
    word_with_count,  // Format B: word <TAB> count
    sign_tokens,      // Format C: delimiter-separated sign tokens
};

std::string_view to_string(WordListFormat format);

struct LoadOptions {
    WordListFormat format = WordListFormat::word_per_line;
    TokenizerConfig tokenizer;
    std::optional<std::uint64_t> min_frequency;
    // Defaults to frequency_weighted for Format B, unique_words otherwise.
    std::optional<CountingMode> counting_mode;
    std::string reading_order_note;
};

SignCorpus load_word_list(const std::filesystem::path& path, const LoadOptions& options);
SignCorpus parse_word_list(std::istream& in, const LoadOptions& options);

// Reverses every sequence; weights and signary are shared with the input.
SignCorpus reverse_corpus(const SignCorpus& corpus);

// The sequences at `indices` (repeats allowed), with a signary rebuilt from
// the signs they use.
SignCorpus select_sequences(const SignCorpus& corpus, std::span<const std::size_t> indices);

}  // namespace signdir
