#include "kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "signdir/error.hpp"

namespace signdir::detail {

GramIndex::GramIndex(std::size_t alphabet, std::size_t order)
    : alphabet_(std::max<std::size_t>(alphabet, 1)), order_(order) {
    for (std::size_t k = 0; k < order_; ++k) {
        if (key_space_ > std::numeric_limits<std::uint64_t>::max() / alphabet_) {
            packed_ = false;
            key_space_ = 0;
            break;
        }
        key_space_ *= alphabet_;
    }
}

std::uint64_t GramIndex::pack(std::span<const SignId> gram) const noexcept {
    std::uint64_t key = 0;
    for (SignId id : gram) key = key * alphabet_ + id;
    return key;
}

std::uint32_t GramIndex::get_or_add(std::span<const SignId> gram) {
    if (packed_) {
        auto [it, inserted] = narrow_.try_emplace(pack(gram), size_);
        if (inserted) ++size_;
        return it->second;
    }
    auto [it, inserted] = wide_.try_emplace(std::vector<SignId>(gram.begin(), gram.end()), size_);
    if (inserted) ++size_;
    return it->second;
}

void GramIndex::clear() {
    narrow_.clear();
    wide_.clear();
    size_ = 0;
}

namespace {

// Lexicographic comparison of the corpus with its reverse, by sign names so
// the answer does not depend on id assignment.
bool compares_canonical(const SignCorpus& corpus) {
    const auto& signary = corpus.signary();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto signs = corpus.signs(i);
        const std::size_t len = signs.size();
        for (std::size_t k = 0; k < len; ++k) {
            const SignId a = signs[k];
            const SignId b = signs[len - 1 - k];
            if (a == b) continue;
            return signary.name(a) < signary.name(b);
        }
    }
    return true;
}

}  // namespace

TerminalKernel::TerminalKernel(const SignCorpus& corpus, int n, const AsymmetryOptions& options)
    : corpus_(&corpus),
      n_(n),
      order_(n > 0 ? static_cast<std::size_t>(n) : 0),
      options_(options),
      corpus_base_(options.entropy.rare_filter && options.entropy.base == RareFilterBase::corpus),
      prototype_(corpus.signary().size(), order_) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "n-gram order must be >= 1");
    if (corpus.empty()) throw Error(ErrorCode::empty_corpus, "empty corpus");
    canonical_ = compares_canonical(corpus);
    direct_permuted_ = prototype_.packed() && prototype_.key_space() <= (1u << 16);

    GramIndex index(corpus.signary().size(), order_);
    const std::size_t count = corpus.size();
    left_.assign(count, kNone);
    right_.assign(count, kNone);
    weights_.resize(count);
    if (corpus_base_) any_offsets_.assign(1, 0);
    for (std::size_t i = 0; i < count; ++i) {
        const auto signs = corpus.signs(i);
        weights_[i] = static_cast<double>(corpus.weight(i));
        if (signs.size() >= order_) {
            left_[i] = index.get_or_add(signs.first(order_));
            right_[i] = index.get_or_add(signs.last(order_));
            if (corpus_base_) {
                for (std::size_t k = 0; k + order_ <= signs.size(); ++k) {
                    any_.push_back(index.get_or_add(signs.subspan(k, order_)));
                }
            }
        }
        if (corpus_base_) any_offsets_.push_back(any_.size());
    }
    categories_ = index.size();

    Scratch scratch = make_scratch();
    reset(scratch);
    for (std::size_t i = 0; i < count; ++i) add(i, 1.0, scratch);
    full_left_ = scratch.counts.left;
    full_right_ = scratch.counts.right;
    full_any_ = scratch.any;
}

TerminalKernel::Scratch TerminalKernel::make_scratch() const {
    Scratch scratch;
    scratch.local = prototype_;
    return scratch;
}

void TerminalKernel::reset(Scratch& scratch) const {
    scratch.counts.left.assign(categories_, 0.0);
    scratch.counts.right.assign(categories_, 0.0);
    if (corpus_base_) scratch.any.assign(categories_, 0.0);
}

void TerminalKernel::add(std::size_t i, double sign, Scratch& scratch) const {
    if (left_[i] == kNone) return;
    const double w = sign * weights_[i];
    scratch.counts.left[left_[i]] += w;
    scratch.counts.right[right_[i]] += w;
    if (corpus_base_) {
        for (std::size_t k = any_offsets_[i]; k < any_offsets_[i + 1]; ++k) scratch.any[any_[k]] += w;
    }
}

TerminalStatistics TerminalKernel::finish(Scratch& scratch) const {
    if (corpus_base_) {
        double total = 0.0;
        std::size_t support = 0;
        for (double v : scratch.any) {
            if (v > 0.0) {
                total += v;
                ++support;
            }
        }
        scratch.counts.left_reference = scratch.any;
        scratch.counts.right_reference = scratch.any;
        scratch.counts.reference_mean = support ? total / static_cast<double>(support) : 0.0;
    }
    return terminal_statistics(scratch.counts, options_);
}

TerminalStatistics TerminalKernel::evaluate_all(Scratch& scratch) const {
    scratch.counts.left = full_left_;
    scratch.counts.right = full_right_;
    if (corpus_base_) scratch.any = full_any_;
    return finish(scratch);
}

TerminalStatistics TerminalKernel::evaluate(std::span<const std::size_t> indices, Scratch& scratch) const {
    reset(scratch);
    for (std::size_t i : indices) add(i, 1.0, scratch);
    return finish(scratch);
}

TerminalStatistics TerminalKernel::evaluate_without(std::size_t skip, Scratch& scratch) const {
    scratch.counts.left = full_left_;
    scratch.counts.right = full_right_;
    if (corpus_base_) scratch.any = full_any_;
    add(skip, -1.0, scratch);
    return finish(scratch);
}

void TerminalKernel::permute(std::size_t i, Rng& rng, std::vector<SignId>& out) const {
    const auto signs = corpus_->signs(i);
    out.assign(signs.begin(), signs.end());
    if (!canonical_) std::reverse(out.begin(), out.end());
    shuffle(std::span<SignId>(out), rng);
    if (!canonical_) std::reverse(out.begin(), out.end());
}

void TerminalKernel::add_permuted(std::span<const SignId> signs, double weight, Scratch& scratch) const {
    if (signs.size() < order_) return;
    auto& c = scratch.counts;
    auto slot = [&](std::span<const SignId> gram) -> std::size_t {
        if (direct_permuted_) return static_cast<std::size_t>(prototype_.pack(gram));
        const std::uint32_t id = scratch.local.get_or_add(gram);
        if (id >= c.left.size()) {
            c.left.resize(id + 1, 0.0);
            c.right.resize(id + 1, 0.0);
            if (corpus_base_) scratch.any.resize(id + 1, 0.0);
        }
        return id;
    };
    c.left[slot(signs.first(order_))] += weight;
    c.right[slot(signs.last(order_))] += weight;
    if (corpus_base_) {
        for (std::size_t k = 0; k + order_ <= signs.size(); ++k) scratch.any[slot(signs.subspan(k, order_))] += weight;
    }
}

TerminalStatistics TerminalKernel::evaluate_permuted(std::span<const std::size_t> indices, Rng& rng,
                                                     Scratch& scratch) const {
    auto& c = scratch.counts;
    if (direct_permuted_) {
        const auto space = static_cast<std::size_t>(prototype_.key_space());
        c.left.assign(space, 0.0);
        c.right.assign(space, 0.0);
        if (corpus_base_) scratch.any.assign(space, 0.0);
    } else {
        scratch.local.clear();
        c.left.clear();
        c.right.clear();
        scratch.any.clear();
    }
    for (std::size_t i : indices) {
        permute(i, rng, scratch.buffer);
        add_permuted(scratch.buffer, weights_[i], scratch);
    }
    return finish(scratch);
}

TerminalStatistics TerminalKernel::evaluate_permuted_all(Rng& rng, Scratch& scratch) const {
    scratch.indices.resize(size());
    for (std::size_t i = 0; i < size(); ++i) scratch.indices[i] = i;
    return evaluate_permuted(scratch.indices, rng, scratch);
}

std::vector<std::uint64_t> TerminalKernel::group_key(std::size_t i) const {
    std::vector<std::uint64_t> key{left_[i], right_[i], corpus_->weight(i)};
    if (corpus_base_) {
        const auto first = any_.begin() + static_cast<std::ptrdiff_t>(any_offsets_[i]);
        const auto last = any_.begin() + static_cast<std::ptrdiff_t>(any_offsets_[i + 1]);
        std::vector<std::uint32_t> cats(first, last);
        std::sort(cats.begin(), cats.end());
        key.insert(key.end(), cats.begin(), cats.end());
    }
    return key;
}

double mean(std::span<const double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    double total = 0.0;
    for (double v : values) total += v;
    return total / static_cast<double>(values.size());
}

double population_std(std::span<const double> values, double m) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

}  // namespace signdir::detail
