#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "signdir/corpus.hpp"
#include "signdir/resampling.hpp"

namespace signdir {

enum class IntervalMethod { bca, percentile };

std::string_view to_string(IntervalMethod method);
std::optional<IntervalMethod> parse_interval_method(std::string_view text);

struct BootstrapCI {
    Statistic statistic = Statistic::delta_g;
    int n = 1;
    double point_estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    std::size_t n_resamples = 0;  // defined replicates actually used
    std::size_t requested = 0;
    std::size_t missing = 0;
    IntervalMethod method = IntervalMethod::bca;
    double z0 = 0.0;
    double a = 0.0;
    bool degenerate = false;     // fewer than 2 distinct replicate values
    bool point_outside = false;  // point estimate outside [lower, upper]
    std::uint64_t seed = 0;
    std::uint64_t corpus_fingerprint = 0;
};

// Linear interpolation between order statistics (Hyndman-Fan type 7) of
// ascending `sorted`; q is clamped to [0, 1].
double percentile(std::span<const double> sorted, double q);

// z0 = Phi^-1(p), p = (#below + #equal / 2) / B, with p kept inside
// [1/(2B), 1 - 1/(2B)].
double bias_correction(std::span<const double> replicates, double point_estimate);

// Jackknife value with the number of leave-one-out deletions it stands for.
struct JackknifeValue {
    double value = 0.0;
    double multiplicity = 1.0;
};

// a = sum m (mean - v)^3 / (6 (sum m (mean - v)^2)^1.5); 0 when the spread is 0.
double acceleration(std::span<const JackknifeValue> jackknife);

// Intervals from precomputed replicates; `replicates` need not be sorted.
BootstrapCI percentile_interval(std::span<const double> replicates, double point_estimate, double level);
BootstrapCI bca_interval(std::span<const double> replicates, double point_estimate, double z0, double a,
                         double level);

struct BootstrapCIs {
    std::optional<BootstrapCI> delta_g;
    std::optional<BootstrapCI> delta_s;
    std::string delta_g_issue;  // why delta_g is absent
    std::string delta_s_issue;
};

// Both statistics from the same resamples.
BootstrapCIs bootstrap_cis(const SignCorpus& corpus, int n, std::size_t resamples, double level,
                           std::uint64_t seed, const ResamplingOptions& options = {},
                           IntervalMethod method = IntervalMethod::bca);

// Throws Error(invalid_argument) when the statistic is undefined on the corpus.
BootstrapCI bootstrap_ci(const SignCorpus& corpus, int n, Statistic statistic, std::size_t resamples,
                         double level, std::uint64_t seed, const ResamplingOptions& options = {},
                         IntervalMethod method = IntervalMethod::bca);

}  // namespace signdir
