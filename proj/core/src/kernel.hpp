#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "signdir/corpus.hpp"
#include "signdir/inequality.hpp"
#include "signdir/rng.hpp"

namespace signdir::detail {

// Dense ids for n-grams. Grams are packed into one 64-bit key when the key
// space allows it, otherwise the sign vector itself is the key.
class GramIndex {
public:
    GramIndex(std::size_t alphabet, std::size_t order);

    bool packed() const noexcept { return packed_; }
    // Size of the packed key space, or 0 when keys do not fit in 64 bits.
    std::uint64_t key_space() const noexcept { return key_space_; }
    std::uint64_t pack(std::span<const SignId> gram) const noexcept;

    std::uint32_t get_or_add(std::span<const SignId> gram);
    std::uint32_t size() const noexcept { return size_; }
    void clear();

private:
    std::size_t alphabet_;
    std::size_t order_;
    bool packed_ = true;
    std::uint64_t key_space_ = 1;
    std::unordered_map<std::uint64_t, std::uint32_t> narrow_;
    std::map<std::vector<SignId>, std::uint32_t> wide_;
    std::uint32_t size_ = 0;
};

// Terminal n-gram tables for one corpus, order and entropy setting, with the
// evaluation paths the resampling procedures need. Every path ends in
// terminal_statistics(), the same function asymmetry() uses.
class TerminalKernel {
public:
    TerminalKernel(const SignCorpus& corpus, int n, const AsymmetryOptions& options);

    struct Scratch {
        TerminalCounts counts;
        std::vector<double> any;
        std::vector<SignId> buffer;
        std::vector<std::size_t> indices;
        GramIndex local{1, 1};
    };

    Scratch make_scratch() const;

    const SignCorpus& corpus() const noexcept { return *corpus_; }
    std::size_t size() const noexcept { return corpus_->size(); }
    int order() const noexcept { return n_; }

    // Whether the corpus compares lexicographically no greater than its
    // reverse. Permutations of a non-canonical corpus are drawn in reversed
    // coordinates so that surrogate(reverse(C)) == reverse(surrogate(C)).
    bool canonical() const noexcept { return canonical_; }

    TerminalStatistics evaluate_all(Scratch& scratch) const;

    // Sequences by index; repeated indices count repeatedly.
    TerminalStatistics evaluate(std::span<const std::size_t> indices, Scratch& scratch) const;

    // Whole corpus minus one copy of sequence `skip`.
    TerminalStatistics evaluate_without(std::size_t skip, Scratch& scratch) const;

    // Listed sequences, each with its signs permuted uniformly at random.
    TerminalStatistics evaluate_permuted(std::span<const std::size_t> indices, Rng& rng,
                                         Scratch& scratch) const;
    TerminalStatistics evaluate_permuted_all(Rng& rng, Scratch& scratch) const;

    void permute(std::size_t sequence, Rng& rng, std::vector<SignId>& out) const;

    // Sequences with equal keys contribute identically to every statistic.
    std::vector<std::uint64_t> group_key(std::size_t sequence) const;

private:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    void reset(Scratch& scratch) const;
    void add(std::size_t sequence, double sign, Scratch& scratch) const;
    TerminalStatistics finish(Scratch& scratch) const;
    void add_permuted(std::span<const SignId> signs, double weight, Scratch& scratch) const;

    const SignCorpus* corpus_;
    int n_;
    std::size_t order_;
    AsymmetryOptions options_;
    bool corpus_base_;
    bool canonical_ = true;
    bool direct_permuted_ = false;  // packed key used directly as category

    std::size_t categories_ = 0;
    std::vector<std::uint32_t> left_;
    std::vector<std::uint32_t> right_;
    std::vector<std::size_t> any_offsets_;
    std::vector<std::uint32_t> any_;
    std::vector<double> weights_;

    std::vector<double> full_left_;
    std::vector<double> full_right_;
    std::vector<double> full_any_;
    GramIndex prototype_;
};

double mean(std::span<const double> values);
double population_std(std::span<const double> values, double mean);

}  // namespace signdir::detail
