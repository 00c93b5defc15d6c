#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "signdir/corpus.hpp"
#include "signdir/inequality.hpp"

namespace signdir {

enum class Statistic { delta_g, delta_s };

std::string_view to_string(Statistic statistic);
std::optional<Statistic> parse_statistic(std::string_view text);

// The statistic's value, or nullopt when it is undefined (degenerate
// denominator, or entropy filter emptied).
std::optional<double> statistic_value(const TerminalStatistics& stats, Statistic statistic);
std::optional<double> statistic_value(const AsymmetryResult& result, Statistic statistic);

struct ResamplingOptions {
    AsymmetryOptions asymmetry;
    unsigned threads = 0;  // 0: hardware concurrency. Never changes results.
};

struct SurrogateEnsemble {
    Statistic statistic = Statistic::delta_g;
    int n = 1;
    std::vector<double> replicates;  // defined realizations, in realization order
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
    std::size_t n_realizations = 0;  // == replicates.size()
    std::size_t requested = 0;
    std::size_t missing = 0;
    std::uint64_t seed = 0;
    std::uint64_t corpus_fingerprint = 0;
};

struct SurrogateEnsembles {
    SurrogateEnsemble delta_g;
    SurrogateEnsemble delta_s;
};

// Both statistics from the same realizations.
SurrogateEnsembles surrogate_ensembles(const SignCorpus& corpus, int n, std::size_t realizations,
                                       std::uint64_t seed, const ResamplingOptions& options = {});

SurrogateEnsemble surrogate_ensemble(const SignCorpus& corpus, int n, Statistic statistic,
                                     std::size_t realizations, std::uint64_t seed,
                                     const ResamplingOptions& options = {});

// Realization `index` of the ensemble seeded with `seed`, as a corpus. The
// result may repeat sequences, so it always allows duplicates.
SignCorpus surrogate_realization(const SignCorpus& corpus, std::uint64_t seed, std::size_t index);

// Sequence indices of bootstrap resample `index` (with replacement).
std::vector<std::size_t> bootstrap_indices(std::size_t count, std::uint64_t seed, std::size_t index);

struct SweepPoint {
    std::size_t sample_size = 0;
    std::size_t n_samples = 0;
    double empirical_mean = 0.0;
    double empirical_std = 0.0;
    double randomized_mean = 0.0;
    double randomized_std = 0.0;
    std::size_t empirical_missing = 0;
    std::size_t randomized_missing = 0;
};

// Gap between the two means exceeds the sum of their stds.
bool bands_separated(const SweepPoint& point);

std::vector<SweepPoint> sample_size_sweep(const SignCorpus& corpus, int n,
                                          std::span<const std::size_t> sizes,
                                          std::size_t samples_per_size, std::uint64_t seed,
                                          const ResamplingOptions& options = {});

// Sizes spaced geometrically from `smallest` up to the corpus size.
std::vector<std::size_t> default_sweep_sizes(std::size_t corpus_size, std::size_t smallest = 10);

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

}  // namespace signdir
