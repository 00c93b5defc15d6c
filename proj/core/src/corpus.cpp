#include "signdir/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>

#include "signdir/error.hpp"

namespace signdir {

SignId Signary::intern(std::string_view sign) {
    std::string key(sign);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    const auto id = static_cast<SignId>(names_.size());
    names_.push_back(key);
    ids_.emplace(std::move(key), id);
    return id;
}

std::optional<SignId> Signary::find(std::string_view sign) const {
    if (auto it = ids_.find(std::string(sign)); it != ids_.end()) return it->second;
    return std::nullopt;
}

std::string_view to_string(CountingMode mode) {
    return mode == CountingMode::unique_words ? "unique-words" : "frequency-weighted";
}

std::string_view to_string(WordListFormat format) {
    switch (format) {
    case WordListFormat::word_per_line: return "A";
    case WordListFormat::word_with_count: return "B";
    case WordListFormat::sign_tokens: return "C";
    }
    return "?";
}

SignCorpus SignCorpus::from_sequences(std::vector<SignSequence> sequences,
                                      std::shared_ptr<const Signary> signary,
                                      CountingMode mode,
                                      std::string reading_order_note,
                                      DuplicatePolicy duplicates) {
    if (!signary) throw Error(ErrorCode::invalid_argument, "corpus needs a signary");
    if (sequences.empty()) throw Error(ErrorCode::empty_corpus, "empty corpus");

    SignCorpus corpus;
    corpus.signary_ = std::move(signary);
    corpus.mode_ = mode;
    corpus.note_ = std::move(reading_order_note);

    std::size_t total = 0;
    for (const auto& s : sequences) total += s.signs.size();
    corpus.signs_.reserve(total);
    corpus.offsets_.reserve(sequences.size() + 1);
    corpus.weights_.reserve(sequences.size());

    std::vector<bool> used(corpus.signary_->size(), false);
    for (const auto& s : sequences) {
        if (s.signs.size() < 2) {
            throw Error(ErrorCode::invalid_argument, "sequences must have at least 2 signs");
        }
        if (s.weight < 1) throw Error(ErrorCode::invalid_argument, "sequence weight must be >= 1");
        if (mode == CountingMode::unique_words && s.weight != 1) {
            throw Error(ErrorCode::invalid_argument, "unique-words corpora have unit weights");
        }
        for (SignId id : s.signs) {
            if (id >= used.size()) throw Error(ErrorCode::invalid_argument, "sign id outside signary");
            used[id] = true;
        }
        corpus.signs_.insert(corpus.signs_.end(), s.signs.begin(), s.signs.end());
        corpus.offsets_.push_back(corpus.signs_.size());
        corpus.weights_.push_back(s.weight);
    }
    if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; })) {
        throw Error(ErrorCode::invalid_argument, "signary contains signs not used by any sequence");
    }
    if (mode == CountingMode::unique_words && duplicates == DuplicatePolicy::reject) {
        std::vector<std::span<const SignId>> views;
        views.reserve(corpus.size());
        for (std::size_t i = 0; i < corpus.size(); ++i) views.push_back(corpus.signs(i));
        std::sort(views.begin(), views.end(), [](auto a, auto b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
        for (std::size_t i = 1; i < views.size(); ++i) {
            if (std::equal(views[i - 1].begin(), views[i - 1].end(), views[i].begin(), views[i].end())) {
                throw Error(ErrorCode::invalid_argument, "duplicate sequence in unique-words corpus");
            }
        }
    }
    corpus.finalize();
    return corpus;
}

SignCorpus SignCorpus::from_words(const std::vector<std::vector<std::string>>& words,
                                  CountingMode mode,
                                  const std::vector<std::uint64_t>& weights) {
    if (!weights.empty() && weights.size() != words.size()) {
        throw Error(ErrorCode::invalid_argument, "weights must match the number of words");
    }
    auto signary = std::make_shared<Signary>();
    std::vector<SignSequence> sequences;
    sequences.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        SignSequence s;
        for (const auto& sign : words[i]) s.signs.push_back(signary->intern(sign));
        s.weight = weights.empty() ? 1 : weights[i];
        sequences.push_back(std::move(s));
    }
    return from_sequences(std::move(sequences), std::move(signary), mode);
}

void SignCorpus::finalize() {
    total_weight_ = 0.0;
    min_length_ = size() ? length(0) : 0;
    max_length_ = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        total_weight_ += static_cast<double>(weights_[i]);
        min_length_ = std::min(min_length_, length(i));
        max_length_ = std::max(max_length_, length(i));
    }

    constexpr std::uint64_t kOffset = 14695981039346656037ull;
    constexpr std::uint64_t kPrime = 1099511628211ull;
    std::uint64_t h = kOffset;
    auto feed = [&](unsigned char byte) {
        h ^= byte;
        h *= kPrime;
    };
    auto feed_u64 = [&](std::uint64_t v) {
        for (int k = 0; k < 8; ++k) feed(static_cast<unsigned char>(v >> (8 * k)));
    };
    feed(static_cast<unsigned char>(mode_));
    for (std::size_t i = 0; i < size(); ++i) {
        for (SignId id : signs(i)) {
            for (unsigned char c : signary_->name(id)) feed(c);
            feed(0x1f);
        }
        feed(0x1e);
        feed_u64(weights_[i]);
    }
    fingerprint_ = h;
}

double SignCorpus::mean_length() const noexcept {
    return empty() ? 0.0 : static_cast<double>(signs_.size()) / static_cast<double>(size());
}

SignSequence SignCorpus::sequence(std::size_t i) const {
    auto view = signs(i);
    return SignSequence{{view.begin(), view.end()}, weights_[i]};
}

std::vector<SignSequence> SignCorpus::sequences() const {
    std::vector<SignSequence> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(sequence(i));
    return out;
}

std::vector<std::string> SignCorpus::sign_names(std::size_t i) const {
    std::vector<std::string> out;
    for (SignId id : signs(i)) out.push_back(signary_->name(id));
    return out;
}

bool operator==(const SignCorpus& a, const SignCorpus& b) {
    if (a.size() != b.size() || a.mode_ != b.mode_ || a.weights_ != b.weights_ ||
        a.offsets_ != b.offsets_) {
        return false;
    }
    for (std::size_t k = 0; k < a.signs_.size(); ++k) {
        if (a.signary_->name(a.signs_[k]) != b.signary_->name(b.signs_[k])) return false;
    }
    return true;
}

SignCorpus reverse_corpus(const SignCorpus& corpus) {
    std::vector<SignSequence> reversed = corpus.sequences();
    for (auto& s : reversed) std::reverse(s.signs.begin(), s.signs.end());
    SignCorpus out = SignCorpus::from_sequences(std::move(reversed), corpus.signary_ptr(),
                                                corpus.counting_mode(), corpus.reading_order_note(),
                                                DuplicatePolicy::allow);
    out.set_load_stats(corpus.load_stats());
    return out;
}

SignCorpus select_sequences(const SignCorpus& corpus, std::span<const std::size_t> indices) {
    auto signary = std::make_shared<Signary>();
    std::vector<SignSequence> sequences;
    sequences.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= corpus.size()) throw Error(ErrorCode::invalid_argument, "sequence index out of range");
        SignSequence s;
        s.weight = corpus.weight(i);
        for (SignId id : corpus.signs(i)) s.signs.push_back(signary->intern(corpus.signary().name(id)));
        sequences.push_back(std::move(s));
    }
    return SignCorpus::from_sequences(std::move(sequences), std::move(signary), corpus.counting_mode(),
                                      corpus.reading_order_note(), DuplicatePolicy::allow);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_count(std::string_view text, std::size_t line) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw LineError(line, "count '" + std::string(text) + "' is not a non-negative integer");
    }
    return value;
}

}  // namespace

SignCorpus parse_word_list(std::istream& in, const LoadOptions& options) {
    const bool format_b = options.format == WordListFormat::word_with_count;
    if (options.format == WordListFormat::sign_tokens &&
        options.tokenizer.mode != TokenizerMode::delimiter_separated) {
        throw Error(ErrorCode::config, "Format C requires the delimiter-separated tokenizer mode");
    }
    const CountingMode mode = options.counting_mode.value_or(
        format_b ? CountingMode::frequency_weighted : CountingMode::unique_words);
    if (mode == CountingMode::frequency_weighted && !format_b) {
        throw Error(ErrorCode::config, "frequency-weighted counting needs Format B input");
    }

    Tokenizer tokenizer(options.tokenizer);
    LoadStats stats;

    std::vector<std::vector<std::string>> words;
    std::vector<std::uint64_t> weights;
    std::map<std::vector<std::string>, std::size_t> index;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        ++stats.lines;
        std::string_view line(raw);
        if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::string_view word = line;
        std::uint64_t count = 1;
        if (format_b) {
            if (trim(line).empty()) {
                ++stats.blank_lines;
                continue;
            }
            const auto tab = line.find('\t');
            if (tab == std::string_view::npos) throw LineError(line_no, "expected word<TAB>count");
            word = line.substr(0, tab);
            count = parse_count(line.substr(tab + 1), line_no);
            if (trim(word).empty()) throw LineError(line_no, "empty word before tab");
            if (count == 0 || (options.min_frequency && count < *options.min_frequency)) {
                ++stats.below_min_frequency;
                continue;
            }
        }
        word = trim(word);
        if (word.empty()) {
            ++stats.blank_lines;
            continue;
        }

        auto signs = tokenizer(word);
        if (signs.size() < 2) {
            ++stats.dropped_short;
            continue;
        }
        if (auto it = index.find(signs); it != index.end()) {
            ++stats.duplicates;
            if (mode == CountingMode::frequency_weighted) weights[it->second] += count;
            continue;
        }
        index.emplace(signs, words.size());
        words.push_back(std::move(signs));
        weights.push_back(mode == CountingMode::frequency_weighted ? count : 1);
    }

    if (words.empty()) throw Error(ErrorCode::empty_corpus, "empty corpus");

    auto signary = std::make_shared<Signary>();
    std::vector<SignSequence> sequences;
    sequences.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        SignSequence s;
        s.signs.reserve(words[i].size());
        for (const auto& sign : words[i]) s.signs.push_back(signary->intern(sign));
        s.weight = weights[i];
        sequences.push_back(std::move(s));
    }
    SignCorpus corpus = SignCorpus::from_sequences(std::move(sequences), std::move(signary), mode,
                                                   options.reading_order_note);
    corpus.set_load_stats(stats);
    return corpus;
}

SignCorpus load_word_list(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open word list '" + path.string() + "'");
    return parse_word_list(in, options);
}

}  // namespace signdir
