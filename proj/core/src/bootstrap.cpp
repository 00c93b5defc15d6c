#include "signdir/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/normal.hpp>

#include "kernel.hpp"
#include "parallel.hpp"
#include "signdir/error.hpp"
#include "signdir/rng.hpp"

namespace signdir {

std::string_view to_string(IntervalMethod method) {
    return method == IntervalMethod::bca ? "BCa" : "percentile";
}

std::optional<IntervalMethod> parse_interval_method(std::string_view text) {
    if (text == "BCa" || text == "bca") return IntervalMethod::bca;
    if (text == "percentile") return IntervalMethod::percentile;
    return std::nullopt;
}

double percentile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw Error(ErrorCode::invalid_argument, "percentile of no values");
    q = std::clamp(q, 0.0, 1.0);
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

namespace {

const boost::math::normal_distribution<double> kStandardNormal;

double phi(double z) { return boost::math::cdf(kStandardNormal, z); }
double phi_inverse(double p) { return boost::math::quantile(kStandardNormal, p); }

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "confidence level must lie in (0, 1)");
    }
}

std::vector<double> sorted_copy(std::span<const double> values) {
    std::vector<double> out(values.begin(), values.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool fewer_than_two_distinct(const std::vector<double>& sorted) {
    return sorted.empty() || sorted.front() == sorted.back();
}

BootstrapCI degenerate_interval(double point_estimate, double level) {
    BootstrapCI ci;
    ci.point_estimate = point_estimate;
    ci.lower = point_estimate;
    ci.upper = point_estimate;
    ci.level = level;
    ci.degenerate = true;
    return ci;
}

void finish(BootstrapCI& ci) {
    if (ci.lower > ci.upper) std::swap(ci.lower, ci.upper);
    ci.point_outside = ci.point_estimate < ci.lower || ci.point_estimate > ci.upper;
}

}  // namespace

double bias_correction(std::span<const double> replicates, double point_estimate) {
    if (replicates.empty()) throw Error(ErrorCode::invalid_argument, "bias correction needs replicates");
    double below = 0.0;
    for (double v : replicates) {
        if (v < point_estimate) {
            below += 1.0;
        } else if (v == point_estimate) {
            below += 0.5;
        }
    }
    const double b = static_cast<double>(replicates.size());
    const double p = std::clamp(below / b, 0.5 / b, 1.0 - 0.5 / b);
    return phi_inverse(p);
}

double acceleration(std::span<const JackknifeValue> jackknife) {
    double weight = 0.0;
    double sum = 0.0;
    for (const auto& j : jackknife) {
        weight += j.multiplicity;
        sum += j.multiplicity * j.value;
    }
    if (weight <= 0.0) return 0.0;
    const double mean = sum / weight;
    double second = 0.0;
    double third = 0.0;
    for (const auto& j : jackknife) {
        const double d = mean - j.value;
        second += j.multiplicity * d * d;
        third += j.multiplicity * d * d * d;
    }
    if (second <= 0.0) return 0.0;
    return third / (6.0 * std::pow(second, 1.5));
}

BootstrapCI percentile_interval(std::span<const double> replicates, double point_estimate, double level) {
    check_level(level);
    const auto sorted = sorted_copy(replicates);
    if (fewer_than_two_distinct(sorted)) {
        auto ci = degenerate_interval(point_estimate, level);
        ci.method = IntervalMethod::percentile;
        ci.n_resamples = sorted.size();
        return ci;
    }
    const double alpha = 1.0 - level;
    BootstrapCI ci;
    ci.method = IntervalMethod::percentile;
    ci.point_estimate = point_estimate;
    ci.level = level;
    ci.n_resamples = sorted.size();
    ci.lower = percentile(sorted, alpha / 2.0);
    ci.upper = percentile(sorted, 1.0 - alpha / 2.0);
    finish(ci);
    return ci;
}

BootstrapCI bca_interval(std::span<const double> replicates, double point_estimate, double z0, double a,
                         double level) {
    check_level(level);
    const auto sorted = sorted_copy(replicates);
    if (fewer_than_two_distinct(sorted)) {
        auto ci = degenerate_interval(point_estimate, level);
        ci.n_resamples = sorted.size();
        ci.z0 = z0;
        ci.a = a;
        return ci;
    }
    const double alpha = 1.0 - level;
    // Adjusted quantile level for a nominal normal quantile z. When the
    // acceleration pushes the denominator through zero the level saturates.
    auto adjusted = [&](double z, double saturated) {
        const double shifted = z0 + z;
        const double denominator = 1.0 - a * shifted;
        if (!(denominator > 0.0)) return saturated;
        return phi(z0 + shifted / denominator);
    };
    BootstrapCI ci;
    ci.method = IntervalMethod::bca;
    ci.point_estimate = point_estimate;
    ci.level = level;
    ci.n_resamples = sorted.size();
    ci.z0 = z0;
    ci.a = a;
    ci.lower = percentile(sorted, adjusted(phi_inverse(alpha / 2.0), 0.0));
    ci.upper = percentile(sorted, adjusted(phi_inverse(1.0 - alpha / 2.0), 1.0));
    finish(ci);
    return ci;
}

namespace {

// Leave-one-sequence-out values. Sequences with equal group keys yield the
// same value, so each group is evaluated once and weighted by its size.
std::vector<std::vector<JackknifeValue>> jackknife(const detail::TerminalKernel& kernel,
                                                   const std::vector<Statistic>& statistics,
                                                   unsigned threads) {
    std::map<std::vector<std::uint64_t>, std::pair<std::size_t, double>> groups;
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        auto [it, inserted] = groups.try_emplace(kernel.group_key(i), i, 0.0);
        it->second.second += 1.0;
    }
    std::vector<std::pair<std::size_t, double>> members;
    members.reserve(groups.size());
    for (const auto& [key, member] : groups) members.push_back(member);
    std::sort(members.begin(), members.end());

    std::vector<std::vector<std::optional<double>>> values(
        statistics.size(), std::vector<std::optional<double>>(members.size()));
    threads = detail::resolve_threads(threads, members.size());
    std::vector<detail::TerminalKernel::Scratch> scratch;
    for (unsigned t = 0; t < threads; ++t) scratch.push_back(kernel.make_scratch());
    detail::parallel_for(members.size(), threads, [&](std::size_t g, unsigned worker) {
        try {
            const auto stats = kernel.evaluate_without(members[g].first, scratch[worker]);
            for (std::size_t s = 0; s < statistics.size(); ++s) values[s][g] = statistic_value(stats, statistics[s]);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::no_ngrams && e.code() != ErrorCode::filter_emptied) throw;
        }
    });

    std::vector<std::vector<JackknifeValue>> out(statistics.size());
    for (std::size_t s = 0; s < statistics.size(); ++s) {
        for (std::size_t g = 0; g < members.size(); ++g) {
            if (values[s][g]) out[s].push_back({*values[s][g], members[g].second});
        }
    }
    return out;
}

}  // namespace

BootstrapCIs bootstrap_cis(const SignCorpus& corpus, int n, std::size_t resamples, double level,
                           std::uint64_t seed, const ResamplingOptions& options, IntervalMethod method) {
    if (resamples < 100) throw Error(ErrorCode::invalid_argument, "bootstrap needs >= 100 resamples");
    check_level(level);
    const detail::TerminalKernel kernel(corpus, n, options.asymmetry);

    auto scratch0 = kernel.make_scratch();
    const auto full = kernel.evaluate_all(scratch0);
    const std::vector<Statistic> all{Statistic::delta_g, Statistic::delta_s};
    std::vector<std::optional<double>> points;
    std::vector<Statistic> wanted;
    BootstrapCIs out;
    for (Statistic s : all) {
        points.push_back(statistic_value(full, s));
        if (points.back()) {
            wanted.push_back(s);
        } else {
            std::string issue = s == Statistic::delta_g ? "degenerate: G_L + G_R = 0"
                                : full.entropy_issue.empty() ? "degenerate: S_L + S_R = 0"
                                                             : full.entropy_issue;
            (s == Statistic::delta_g ? out.delta_g_issue : out.delta_s_issue) = issue;
        }
    }
    if (wanted.empty()) return out;

    std::vector<std::vector<std::optional<double>>> slots(all.size(), std::vector<std::optional<double>>(resamples));
    const std::size_t count = corpus.size();
    const std::uint64_t stream = derive_stream_seed(seed, Stream::bootstrap);
    const unsigned threads = detail::resolve_threads(options.threads, resamples);
    std::vector<detail::TerminalKernel::Scratch> scratch;
    for (unsigned t = 0; t < threads; ++t) scratch.push_back(kernel.make_scratch());

    detail::parallel_for(resamples, threads, [&](std::size_t r, unsigned worker) {
        Rng rng(derive_replicate_seed(stream, r));
        auto& indices = scratch[worker].indices;
        indices.resize(count);
        for (auto& i : indices) i = static_cast<std::size_t>(rng.below(count));
        try {
            const auto stats = kernel.evaluate(indices, scratch[worker]);
            for (std::size_t s = 0; s < all.size(); ++s) slots[s][r] = statistic_value(stats, all[s]);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::no_ngrams && e.code() != ErrorCode::filter_emptied) throw;
        }
    });

    std::vector<std::vector<JackknifeValue>> jack;
    if (method == IntervalMethod::bca) jack = jackknife(kernel, all, options.threads);

    for (std::size_t s = 0; s < all.size(); ++s) {
        if (!points[s]) continue;
        std::vector<double> replicates;
        std::size_t missing = 0;
        for (const auto& v : slots[s]) {
            if (v) replicates.push_back(*v); else ++missing;
        }
        BootstrapCI ci;
        if (replicates.empty()) {
            ci = degenerate_interval(*points[s], level);
            ci.method = method;
        } else if (method == IntervalMethod::percentile) {
            ci = percentile_interval(replicates, *points[s], level);
        } else {
            const double z0 = bias_correction(replicates, *points[s]);
            const double a = acceleration(jack[s]);
            ci = bca_interval(replicates, *points[s], z0, a, level);
        }
        ci.statistic = all[s];
        ci.n = n;
        ci.requested = resamples;
        ci.missing = missing;
        ci.seed = seed;
        ci.corpus_fingerprint = corpus.fingerprint();
        (all[s] == Statistic::delta_g ? out.delta_g : out.delta_s) = ci;
    }
    return out;
}

BootstrapCI bootstrap_ci(const SignCorpus& corpus, int n, Statistic statistic, std::size_t resamples,
                         double level, std::uint64_t seed, const ResamplingOptions& options,
                         IntervalMethod method) {
    auto both = bootstrap_cis(corpus, n, resamples, level, seed, options, method);
    auto& ci = statistic == Statistic::delta_g ? both.delta_g : both.delta_s;
    if (!ci) {
        throw Error(ErrorCode::invalid_argument,
                    std::string(to_string(statistic)) + " undefined on the corpus: " +
                        (statistic == Statistic::delta_g ? both.delta_g_issue : both.delta_s_issue));
    }
    return *ci;
}

}  // namespace signdir
