#include "signdir/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "signdir/error.hpp"

namespace signdir {

double gini_coefficient(std::span<const double> weights) {
    if (weights.empty()) throw Error(ErrorCode::invalid_argument, "Gini of an empty distribution");
    std::vector<double> sorted(weights.begin(), weights.end());
    for (double w : sorted) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::invalid_argument, "Gini weights must be finite and non-negative");
        }
    }
    std::sort(sorted.begin(), sorted.end());

    double total = 0.0;
    double trapezoids = 0.0;  // sum of (C_i + C_{i-1})
    for (double w : sorted) {
        const double previous = total;
        total += w;
        trapezoids += total + previous;
    }
    if (total <= 0.0) throw Error(ErrorCode::invalid_argument, "Gini of an all-zero distribution");
    return 1.0 - trapezoids / (static_cast<double>(sorted.size()) * total);
}

double gini(const PositionalDistribution& dist) {
    if (dist.support_size() == 0) throw Error(ErrorCode::no_ngrams, "Gini of an empty distribution");
    const auto values = dist.sorted_counts();
    return gini_coefficient(values);
}

double gini(const LorenzCurve& curve) {
    if (curve.points.empty()) throw Error(ErrorCode::invalid_argument, "empty Lorenz curve");
    double area = 0.0;
    LorenzPoint prev;
    for (const auto& p : curve.points) {
        area += (p.f - prev.f) * (p.l + prev.l);
        prev = p;
    }
    return 1.0 - area;
}

double entropy_bits(std::span<const double> weights) {
    std::vector<double> values;
    values.reserve(weights.size());
    for (double w : weights) {
        if (w > 0.0) values.push_back(w);
    }
    if (values.empty()) throw Error(ErrorCode::invalid_argument, "entropy of an empty distribution");
    std::sort(values.begin(), values.end());
    double total = 0.0;
    for (double v : values) total += v;
    double bits = 0.0;
    for (double v : values) {
        const double p = v / total;
        bits -= p * std::log2(p);
    }
    return bits;
}

FilteredEntropy filtered_entropy(std::span<const double> counts, std::span<const double> reference,
                                 double reference_mean, const EntropyOptions& options) {
    if (counts.size() != reference.size()) {
        throw Error(ErrorCode::invalid_argument, "entropy reference must parallel the counts");
    }
    std::vector<double> kept;
    kept.reserve(counts.size());
    const double cutoff = options.threshold * reference_mean;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (!(counts[i] > 0.0)) continue;
        if (options.rare_filter && reference[i] < cutoff) continue;
        kept.push_back(counts[i]);
    }
    if (kept.empty()) {
        throw Error(ErrorCode::filter_emptied, "rare-sign filter emptied support");
    }
    return {entropy_bits(kept), kept.size()};
}

namespace {

double mean_positive(std::span<const double> values) {
    double total = 0.0;
    std::size_t support = 0;
    for (double v : values) {
        if (v > 0.0) {
            total += v;
            ++support;
        }
    }
    return support ? total / static_cast<double>(support) : 0.0;
}

std::vector<double> count_values(const PositionalDistribution& dist) {
    std::vector<double> values;
    values.reserve(dist.support_size());
    for (const auto& [gram, c] : dist.counts()) values.push_back(c);
    return values;
}

std::vector<double> reference_values(const PositionalDistribution& dist,
                                     const PositionalDistribution& corpus_frequencies) {
    std::vector<double> values;
    values.reserve(dist.support_size());
    for (const auto& [gram, c] : dist.counts()) values.push_back(corpus_frequencies.count(gram));
    return values;
}

}  // namespace

double shannon_entropy(const PositionalDistribution& dist, bool rare_filter) {
    EntropyOptions options;
    options.rare_filter = rare_filter;
    return shannon_entropy(dist, options).bits;
}

FilteredEntropy shannon_entropy(const PositionalDistribution& dist, const EntropyOptions& options,
                                const PositionalDistribution* corpus_frequencies) {
    if (dist.support_size() == 0) throw Error(ErrorCode::no_ngrams, "entropy of an empty distribution");
    const auto counts = count_values(dist);
    if (options.rare_filter && options.base == RareFilterBase::corpus) {
        if (!corpus_frequencies) {
            throw Error(ErrorCode::invalid_argument, "corpus-base rare filter needs corpus frequencies");
        }
        const auto reference = reference_values(dist, *corpus_frequencies);
        const double mean = corpus_frequencies->total() / static_cast<double>(corpus_frequencies->support_size());
        return filtered_entropy(counts, reference, mean, options);
    }
    return filtered_entropy(counts, counts, mean_positive(counts), options);
}

InequalitySummary summarize(const PositionalDistribution& dist, const EntropyOptions& options,
                            const PositionalDistribution* corpus_frequencies) {
    InequalitySummary summary;
    summary.gini = gini(dist);
    summary.support_size = dist.support_size();
    try {
        const auto h = shannon_entropy(dist, options, corpus_frequencies);
        summary.entropy_bits = h.bits;
        summary.entropy_support_size = h.support_size;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::filter_emptied) throw;
    }
    return summary;
}

NormalizedDifference normalized_difference(double left, double right) {
    const double denominator = left + right;
    if (denominator == 0.0) return {0.0, true};
    return {2.0 * (left - right) / denominator, false};
}

TerminalStatistics terminal_statistics(const TerminalCounts& counts, const AsymmetryOptions& options) {
    const bool corpus_base =
        options.entropy.rare_filter && options.entropy.base == RareFilterBase::corpus;

    // Positive entries only, paired with their reference, sorted so the
    // result is independent of category order.
    auto collect = [&](const std::vector<double>& values, const std::vector<double>& refs) {
        if (corpus_base && refs.size() != values.size()) {
            throw Error(ErrorCode::invalid_argument, "terminal reference counts missing");
        }
        std::vector<std::pair<double, double>> pairs;
        pairs.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] > 0.0) pairs.emplace_back(values[i], corpus_base ? refs[i] : values[i]);
        }
        std::sort(pairs.begin(), pairs.end());
        return pairs;
    };
    const auto left = collect(counts.left, counts.left_reference);
    const auto right = collect(counts.right, counts.right_reference);
    if (left.empty() || right.empty()) {
        throw Error(ErrorCode::no_ngrams, "no n-grams at a terminal position");
    }

    auto split = [](const std::vector<std::pair<double, double>>& pairs) {
        std::pair<std::vector<double>, std::vector<double>> out;
        for (const auto& [c, r] : pairs) {
            out.first.push_back(c);
            out.second.push_back(r);
        }
        return out;
    };
    const auto [left_counts, left_refs] = split(left);
    const auto [right_counts, right_refs] = split(right);

    TerminalStatistics stats;
    stats.left_support = left_counts.size();
    stats.right_support = right_counts.size();
    stats.g_left = gini_coefficient(left_counts);
    stats.g_right = gini_coefficient(right_counts);
    stats.delta_g = normalized_difference(stats.g_left, stats.g_right);

    try {
        const double left_mean = corpus_base ? counts.reference_mean : mean_positive(left_counts);
        const double right_mean = corpus_base ? counts.reference_mean : mean_positive(right_counts);
        stats.s_left = filtered_entropy(left_counts, left_refs, left_mean, options.entropy).bits;
        stats.s_right = filtered_entropy(right_counts, right_refs, right_mean, options.entropy).bits;
        stats.delta_s = normalized_difference(*stats.s_left, *stats.s_right);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::filter_emptied) throw;
        stats.s_left.reset();
        stats.s_right.reset();
        stats.delta_s.reset();
        stats.entropy_issue = e.what();
    }
    return stats;
}

AsymmetryResult asymmetry(const SignCorpus& corpus, int n, const AsymmetryOptions& options) {
    if (corpus.empty()) throw Error(ErrorCode::empty_corpus, "empty corpus");
    const auto left = positional_distribution(corpus, n, PositionClass::left_terminal);
    const auto right = positional_distribution(corpus, n, PositionClass::right_terminal);

    TerminalCounts counts;
    counts.left = count_values(left);
    counts.right = count_values(right);
    if (options.entropy.rare_filter && options.entropy.base == RareFilterBase::corpus) {
        const auto any = positional_distribution(corpus, n, PositionClass::any);
        counts.left_reference = reference_values(left, any);
        counts.right_reference = reference_values(right, any);
        counts.reference_mean = any.total() / static_cast<double>(any.support_size());
    }
    const auto stats = terminal_statistics(counts, options);

    AsymmetryResult result;
    result.n = n;
    result.g_left = stats.g_left;
    result.g_right = stats.g_right;
    result.delta_g = stats.delta_g.value;
    result.delta_g_degenerate = stats.delta_g.degenerate;
    result.s_left = stats.s_left;
    result.s_right = stats.s_right;
    if (stats.delta_s) {
        result.delta_s = stats.delta_s->value;
        result.delta_s_degenerate = stats.delta_s->degenerate;
    }
    result.entropy_issue = stats.entropy_issue;
    result.left_support = stats.left_support;
    result.right_support = stats.right_support;
    result.corpus_fingerprint = corpus.fingerprint();
    return result;
}

}  // namespace signdir
