#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "signdir/corpus.hpp"
#include "signdir/lorenz.hpp"

namespace signdir {

enum class PositionClass { any, left_terminal, right_terminal };

std::string_view to_string(PositionClass position);

using NGram = std::vector<SignId>;

// Windowing for the any-position class when n > 1.
enum class WindowMode { overlapping, non_overlapping };

struct DistributionOptions {
    WindowMode any_windows = WindowMode::overlapping;
};

// Weighted n-gram counts at one position class. Keys are ordered by sign id,
// which also fixes the tie order used by lorenz_points().
class PositionalDistribution {
public:
    PositionalDistribution(int n, PositionClass position, std::map<NGram, double> counts);

    int order() const noexcept { return n_; }
    PositionClass position() const noexcept { return position_; }
    const std::map<NGram, double>& counts() const noexcept { return counts_; }
    double total() const noexcept { return total_; }
    std::size_t support_size() const noexcept { return counts_.size(); }

    double count(const NGram& gram) const;
    double probability(const NGram& gram) const;
    std::map<NGram, double> probabilities() const;

    // Count values in ascending order (the only input the measures need).
    std::vector<double> sorted_counts() const;

private:
    int n_;
    PositionClass position_;
    std::map<NGram, double> counts_;  // strictly positive entries only
    double total_ = 0.0;
};

// Throws Error(no_ngrams) when no sequence contributes an n-gram.
PositionalDistribution positional_distribution(const SignCorpus& corpus, int n,
                                               PositionClass position,
                                               const DistributionOptions& options = {});

LorenzCurve lorenz_points(const PositionalDistribution& dist);

// Categories in the order lorenz_points() accumulates them.
std::vector<NGram> lorenz_order(const PositionalDistribution& dist);

std::string ngram_label(const NGram& gram, const Signary& signary);

// CSV: ngram,count,probability (rows in key order).
void write_distribution_csv(std::ostream& out, const PositionalDistribution& dist,
                            const Signary& signary);
// CSV: F,L including the (0,0) origin row.
void write_lorenz_csv(std::ostream& out, const LorenzCurve& curve);

}  // namespace signdir
