#include "signdir/positional.hpp"

#include <algorithm>
#include <ostream>

#include "signdir/error.hpp"
#include "signdir/numeric_format.hpp"

namespace signdir {

std::string_view to_string(PositionClass position) {
    switch (position) {
    case PositionClass::any: return "any";
    case PositionClass::left_terminal: return "left";
    case PositionClass::right_terminal: return "right";
    }
    return "?";
}

PositionalDistribution::PositionalDistribution(int n, PositionClass position,
                                               std::map<NGram, double> counts)
    : n_(n), position_(position), counts_(std::move(counts)) {
    for (auto it = counts_.begin(); it != counts_.end();) {
        if (!(it->second > 0.0)) {
            it = counts_.erase(it);
        } else {
            total_ += it->second;
            ++it;
        }
    }
}

double PositionalDistribution::count(const NGram& gram) const {
    auto it = counts_.find(gram);
    return it == counts_.end() ? 0.0 : it->second;
}

double PositionalDistribution::probability(const NGram& gram) const {
    return total_ > 0.0 ? count(gram) / total_ : 0.0;
}

std::map<NGram, double> PositionalDistribution::probabilities() const {
    std::map<NGram, double> out;
    for (const auto& [gram, c] : counts_) out.emplace(gram, c / total_);
    return out;
}

std::vector<double> PositionalDistribution::sorted_counts() const {
    std::vector<double> values;
    values.reserve(counts_.size());
    for (const auto& [gram, c] : counts_) values.push_back(c);
    std::sort(values.begin(), values.end());
    return values;
}

PositionalDistribution positional_distribution(const SignCorpus& corpus, int n,
                                               PositionClass position,
                                               const DistributionOptions& options) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "n-gram order must be >= 1");
    const auto order = static_cast<std::size_t>(n);

    std::map<NGram, double> counts;
    NGram gram(order);
    auto add = [&](std::span<const SignId> signs, std::size_t start, double weight) {
        std::copy_n(signs.begin() + static_cast<std::ptrdiff_t>(start), order, gram.begin());
        counts[gram] += weight;
    };

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto signs = corpus.signs(i);
        const std::size_t len = signs.size();
        if (len < order) continue;
        const auto weight = static_cast<double>(corpus.weight(i));
        switch (position) {
        case PositionClass::left_terminal: add(signs, 0, weight); break;
        case PositionClass::right_terminal: add(signs, len - order, weight); break;
        case PositionClass::any: {
            const std::size_t step = options.any_windows == WindowMode::overlapping ? 1 : order;
            for (std::size_t k = 0; k + order <= len; k += step) add(signs, k, weight);
            break;
        }
        }
    }
    if (counts.empty()) {
        throw Error(ErrorCode::no_ngrams, "no " + std::to_string(n) + "-grams at position '" +
                                              std::string(to_string(position)) + "'");
    }
    return PositionalDistribution(n, position, std::move(counts));
}

std::vector<NGram> lorenz_order(const PositionalDistribution& dist) {
    std::vector<std::pair<NGram, double>> entries(dist.counts().begin(), dist.counts().end());
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<NGram> order;
    order.reserve(entries.size());
    for (auto& [gram, c] : entries) order.push_back(gram);
    return order;
}

LorenzCurve lorenz_points(const PositionalDistribution& dist) {
    const auto values = dist.sorted_counts();
    LorenzCurve curve;
    const auto n = static_cast<double>(values.size());
    double cumulative = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        cumulative += values[i];
        curve.points.push_back({static_cast<double>(i + 1) / n, cumulative / dist.total()});
    }
    return curve;
}

std::string ngram_label(const NGram& gram, const Signary& signary) {
    std::string out;
    for (std::size_t k = 0; k < gram.size(); ++k) {
        if (k) out += ' ';
        out += signary.name(gram[k]);
    }
    return out;
}

void write_distribution_csv(std::ostream& out, const PositionalDistribution& dist,
                            const Signary& signary) {
    out << "ngram,count,probability\n";
    for (const auto& [gram, c] : dist.counts()) {
        out << csv_field(ngram_label(gram, signary)) << ',' << format_number(c) << ','
            << format_number(c / dist.total()) << '\n';
    }
}

void write_lorenz_csv(std::ostream& out, const LorenzCurve& curve) {
    out << "F,L\n0,0\n";
    for (const auto& p : curve.points) out << format_number(p.f) << ',' << format_number(p.l) << '\n';
}

}  // namespace signdir
