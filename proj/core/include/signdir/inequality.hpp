#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "signdir/corpus.hpp"
#include "signdir/lorenz.hpp"
#include "signdir/positional.hpp"

namespace signdir {

// Gini index of non-negative category weights (any scale; zeros are kept as
// categories). Lorenz trapezoid form over weights sorted ascending:
//
//   G = 1 - sum_i (F_i - F_{i-1}) (L_i + L_{i-1}),   F_i = i/N,  L_i = C_i/T
//
// evaluated as 1 - sum_i (C_i + C_{i-1}) / (N T) so integer counts give
// exact 0 for uniform and exact 1 - 1/N for a single occupied category.
double gini_coefficient(std::span<const double> weights);

// Gini over the distribution's positive-probability categories.
double gini(const PositionalDistribution& dist);

// Same quantity read off a Lorenz curve.
double gini(const LorenzCurve& curve);

// Shannon entropy in bits of non-negative weights (normalized internally).
double entropy_bits(std::span<const double> weights);

enum class RareFilterBase {
    position,  // mean over the distribution's own support
    corpus,    // corpus-wide (any-position) frequencies
};

struct EntropyOptions {
    bool rare_filter = true;
    RareFilterBase base = RareFilterBase::position;
    double threshold = 0.2;  // fraction of the mean frequency
};

struct FilteredEntropy {
    double bits = 0.0;
    std::size_t support_size = 0;  // categories kept by the filter
};

// Entropy of `counts` after dropping categories whose `reference` frequency
// is below threshold * mean(reference over the reference support), then
// renormalizing. `reference` is parallel to `counts`; pass the counts
// themselves for the position-specific filter. Throws
// Error(filter_emptied) when nothing survives.
FilteredEntropy filtered_entropy(std::span<const double> counts,
                                 std::span<const double> reference,
                                 double reference_mean,
                                 const EntropyOptions& options);

// Position-specific filter, or no filter when rare_filter is false.
double shannon_entropy(const PositionalDistribution& dist, bool rare_filter);

// Corpus-base filtering needs the any-position distribution of the same
// order as `corpus_frequencies`.
FilteredEntropy shannon_entropy(const PositionalDistribution& dist, const EntropyOptions& options,
                                const PositionalDistribution* corpus_frequencies = nullptr);

struct InequalitySummary {
    double gini = 0.0;
    std::optional<double> entropy_bits;
    std::size_t support_size = 0;
    std::size_t entropy_support_size = 0;
};

InequalitySummary summarize(const PositionalDistribution& dist, const EntropyOptions& options = {},
                            const PositionalDistribution* corpus_frequencies = nullptr);

// 2 (left - right) / (left + right); a zero denominator yields 0 flagged
// degenerate.
struct NormalizedDifference {
    double value = 0.0;
    bool degenerate = false;
};

NormalizedDifference normalized_difference(double left, double right);

struct AsymmetryOptions {
    EntropyOptions entropy;
};

// Terminal count tables as the resampling kernels produce them. Zero
// entries are ignored. The reference vectors are only read for the
// corpus-base rare filter and must then be parallel to left/right.
struct TerminalCounts {
    std::vector<double> left;
    std::vector<double> right;
    std::vector<double> left_reference;
    std::vector<double> right_reference;
    double reference_mean = 0.0;
};

struct TerminalStatistics {
    double g_left = 0.0;
    double g_right = 0.0;
    NormalizedDifference delta_g;
    std::optional<double> s_left;
    std::optional<double> s_right;
    std::optional<NormalizedDifference> delta_s;
    std::size_t left_support = 0;
    std::size_t right_support = 0;
    std::string entropy_issue;  // set when delta_s is unavailable
};

// Single evaluation path shared by asymmetry() and every resampling kernel.
// Category values are sorted before summation, so the result depends only
// on the multiset of counts.
TerminalStatistics terminal_statistics(const TerminalCounts& counts, const AsymmetryOptions& options);

struct AsymmetryResult {
    int n = 1;
    double g_left = 0.0;
    double g_right = 0.0;
    double delta_g = 0.0;
    bool delta_g_degenerate = false;
    std::optional<double> s_left;
    std::optional<double> s_right;
    std::optional<double> delta_s;
    bool delta_s_degenerate = false;
    std::string entropy_issue;
    std::size_t left_support = 0;
    std::size_t right_support = 0;
    std::uint64_t corpus_fingerprint = 0;
};

// Sign convention: delta_g < 0 and delta_s > 0 for left-to-right text.
AsymmetryResult asymmetry(const SignCorpus& corpus, int n, const AsymmetryOptions& options = {});

}  // namespace signdir
