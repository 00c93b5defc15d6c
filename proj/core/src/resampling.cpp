#include "signdir/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "kernel.hpp"
#include "parallel.hpp"
#include "signdir/error.hpp"
#include "signdir/numeric_format.hpp"
#include "signdir/rng.hpp"

namespace signdir {

std::string_view to_string(Statistic statistic) {
    return statistic == Statistic::delta_g ? "delta_g" : "delta_s";
}

std::optional<Statistic> parse_statistic(std::string_view text) {
    if (text == "delta_g") return Statistic::delta_g;
    if (text == "delta_s") return Statistic::delta_s;
    return std::nullopt;
}

std::optional<double> statistic_value(const TerminalStatistics& stats, Statistic statistic) {
    if (statistic == Statistic::delta_g) {
        if (stats.delta_g.degenerate) return std::nullopt;
        return stats.delta_g.value;
    }
    if (!stats.delta_s || stats.delta_s->degenerate) return std::nullopt;
    return stats.delta_s->value;
}

std::optional<double> statistic_value(const AsymmetryResult& result, Statistic statistic) {
    if (statistic == Statistic::delta_g) {
        if (result.delta_g_degenerate) return std::nullopt;
        return result.delta_g;
    }
    if (!result.delta_s || result.delta_s_degenerate) return std::nullopt;
    return result.delta_s;
}

namespace {

// One slot per replicate; an undefined value stays empty.
using Slots = std::vector<std::optional<double>>;

// Evaluation failures that make a single replicate undefined rather than
// aborting the whole procedure.
bool replicate_failure(const Error& e) {
    return e.code() == ErrorCode::no_ngrams || e.code() == ErrorCode::filter_emptied;
}

SurrogateEnsemble summarize_ensemble(Statistic statistic, int n, const Slots& slots,
                                     std::uint64_t seed, std::uint64_t fingerprint) {
    SurrogateEnsemble out;
    out.statistic = statistic;
    out.n = n;
    out.requested = slots.size();
    out.seed = seed;
    out.corpus_fingerprint = fingerprint;
    for (const auto& v : slots) {
        if (v) {
            out.replicates.push_back(*v);
        } else {
            ++out.missing;
        }
    }
    out.n_realizations = out.replicates.size();
    out.mean = detail::mean(out.replicates);
    out.std = detail::population_std(out.replicates, out.mean);
    return out;
}

}  // namespace

SurrogateEnsembles surrogate_ensembles(const SignCorpus& corpus, int n, std::size_t realizations,
                                       std::uint64_t seed, const ResamplingOptions& options) {
    if (realizations < 1) throw Error(ErrorCode::invalid_argument, "realizations must be >= 1");
    const detail::TerminalKernel kernel(corpus, n, options.asymmetry);
    const std::uint64_t stream = derive_stream_seed(seed, Stream::surrogate);

    Slots g(realizations);
    Slots s(realizations);
    const unsigned threads = detail::resolve_threads(options.threads, realizations);
    std::vector<detail::TerminalKernel::Scratch> scratch;
    for (unsigned t = 0; t < threads; ++t) scratch.push_back(kernel.make_scratch());

    detail::parallel_for(realizations, threads, [&](std::size_t r, unsigned worker) {
        Rng rng(derive_replicate_seed(stream, r));
        try {
            const auto stats = kernel.evaluate_permuted_all(rng, scratch[worker]);
            g[r] = statistic_value(stats, Statistic::delta_g);
            s[r] = statistic_value(stats, Statistic::delta_s);
        } catch (const Error& e) {
            if (!replicate_failure(e)) throw;
        }
    });

    const auto fp = corpus.fingerprint();
    return {summarize_ensemble(Statistic::delta_g, n, g, seed, fp),
            summarize_ensemble(Statistic::delta_s, n, s, seed, fp)};
}

SurrogateEnsemble surrogate_ensemble(const SignCorpus& corpus, int n, Statistic statistic,
                                     std::size_t realizations, std::uint64_t seed,
                                     const ResamplingOptions& options) {
    auto both = surrogate_ensembles(corpus, n, realizations, seed, options);
    return statistic == Statistic::delta_g ? std::move(both.delta_g) : std::move(both.delta_s);
}

SignCorpus surrogate_realization(const SignCorpus& corpus, std::uint64_t seed, std::size_t index) {
    const detail::TerminalKernel kernel(corpus, 1, {});
    Rng rng(derive_replicate_seed(derive_stream_seed(seed, Stream::surrogate), index));
    std::vector<SignSequence> sequences;
    sequences.reserve(corpus.size());
    std::vector<SignId> buffer;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        kernel.permute(i, rng, buffer);
        sequences.push_back({buffer, corpus.weight(i)});
    }
    return SignCorpus::from_sequences(std::move(sequences), corpus.signary_ptr(), corpus.counting_mode(),
                                      corpus.reading_order_note(), DuplicatePolicy::allow);
}

std::vector<std::size_t> bootstrap_indices(std::size_t count, std::uint64_t seed, std::size_t index) {
    Rng rng(derive_replicate_seed(derive_stream_seed(seed, Stream::bootstrap), index));
    std::vector<std::size_t> out(count);
    for (auto& i : out) i = static_cast<std::size_t>(rng.below(count));
    return out;
}

bool bands_separated(const SweepPoint& p) {
    return std::abs(p.empirical_mean - p.randomized_mean) > p.empirical_std + p.randomized_std;
}

std::vector<SweepPoint> sample_size_sweep(const SignCorpus& corpus, int n,
                                          std::span<const std::size_t> sizes,
                                          std::size_t samples_per_size, std::uint64_t seed,
                                          const ResamplingOptions& options) {
    if (samples_per_size < 1) throw Error(ErrorCode::invalid_argument, "samples per size must be >= 1");
    for (std::size_t size : sizes) {
        if (size < 1 || size > corpus.size()) {
            throw Error(ErrorCode::invalid_argument,
                        "sweep size " + std::to_string(size) + " outside [1, " +
                            std::to_string(corpus.size()) + "]");
        }
    }
    const detail::TerminalKernel kernel(corpus, n, options.asymmetry);
    const std::uint64_t stream = derive_stream_seed(seed, Stream::sweep);
    const std::size_t jobs = sizes.size() * samples_per_size;

    Slots empirical(jobs);
    Slots randomized(jobs);
    const unsigned threads = detail::resolve_threads(options.threads, jobs);
    std::vector<detail::TerminalKernel::Scratch> scratch;
    std::vector<std::vector<std::size_t>> pools(threads);
    for (unsigned t = 0; t < threads; ++t) scratch.push_back(kernel.make_scratch());

    detail::parallel_for(jobs, threads, [&](std::size_t job, unsigned worker) {
        const std::size_t k = job / samples_per_size;
        const std::size_t sample = job % samples_per_size;
        const std::size_t size = sizes[k];
        Rng rng(derive_replicate_seed(derive_replicate_seed(stream, k), sample));

        // Partial Fisher-Yates on a fresh identity permutation.
        auto& pool = pools[worker];
        pool.resize(corpus.size());
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < size; ++i) {
            const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        const std::span<const std::size_t> subset(pool.data(), size);
        try {
            empirical[job] = statistic_value(kernel.evaluate(subset, scratch[worker]), Statistic::delta_g);
        } catch (const Error& e) {
            if (!replicate_failure(e)) throw;
        }
        try {
            randomized[job] =
                statistic_value(kernel.evaluate_permuted(subset, rng, scratch[worker]), Statistic::delta_g);
        } catch (const Error& e) {
            if (!replicate_failure(e)) throw;
        }
    });

    std::vector<SweepPoint> points;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        std::vector<double> e;
        std::vector<double> r;
        SweepPoint p;
        p.sample_size = sizes[k];
        p.n_samples = samples_per_size;
        for (std::size_t s = 0; s < samples_per_size; ++s) {
            const auto& ev = empirical[k * samples_per_size + s];
            const auto& rv = randomized[k * samples_per_size + s];
            if (ev) e.push_back(*ev); else ++p.empirical_missing;
            if (rv) r.push_back(*rv); else ++p.randomized_missing;
        }
        p.empirical_mean = detail::mean(e);
        p.empirical_std = detail::population_std(e, p.empirical_mean);
        p.randomized_mean = detail::mean(r);
        p.randomized_std = detail::population_std(r, p.randomized_mean);
        points.push_back(p);
    }
    return points;
}

std::vector<std::size_t> default_sweep_sizes(std::size_t corpus_size, std::size_t smallest) {
    std::vector<std::size_t> sizes;
    if (corpus_size == 0) return sizes;
    smallest = std::clamp<std::size_t>(smallest, 1, corpus_size);
    // 1-2-5 steps per decade.
    for (std::size_t decade = 1; decade <= corpus_size; decade *= 10) {
        for (std::size_t m : {1, 2, 5}) {
            const std::size_t size = m * decade;
            if (size >= smallest && size <= corpus_size) sizes.push_back(size);
        }
        if (decade > std::numeric_limits<std::size_t>::max() / 10) break;
    }
    if (sizes.empty() || sizes.back() != corpus_size) sizes.push_back(corpus_size);
    return sizes;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
    out << "N,empirical_mean,empirical_std,randomized_mean,randomized_std\n";
    for (const auto& p : points) {
        out << p.sample_size << ',' << format_number(p.empirical_mean) << ','
            << format_number(p.empirical_std) << ',' << format_number(p.randomized_mean) << ','
            << format_number(p.randomized_std) << '\n';
    }
}

}  // namespace signdir
