#include "signdir/direction.hpp"

#include <cmath>

#include "signdir/error.hpp"

namespace signdir {

std::string_view to_string(Direction direction) {
    switch (direction) {
    case Direction::left_to_right: return "LeftToRight";
    case Direction::right_to_left: return "RightToLeft";
    case Direction::inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string_view to_string(VerdictBasis basis) {
    switch (basis) {
    case VerdictBasis::delta_g: return "delta_g";
    case VerdictBasis::delta_s: return "delta_s";
    case VerdictBasis::both: return "both";
    }
    return "?";
}

std::optional<VerdictBasis> parse_verdict_basis(std::string_view text) {
    if (text == "delta_g") return VerdictBasis::delta_g;
    if (text == "delta_s") return VerdictBasis::delta_s;
    if (text == "both") return VerdictBasis::both;
    return std::nullopt;
}

Band surrogate_band(const SurrogateEnsemble& surrogate, double band_width) {
    return {surrogate.mean - band_width * surrogate.std, surrogate.mean + band_width * surrogate.std};
}

bool disjoint(const BootstrapCI& ci, const Band& band) {
    return ci.upper < band.lower || ci.lower > band.upper;
}

Direction direction_from_sign(Statistic statistic, double value) {
    if (value == 0.0 || std::isnan(value)) return Direction::inconclusive;
    const bool left_to_right = statistic == Statistic::delta_g ? value < 0.0 : value > 0.0;
    return left_to_right ? Direction::left_to_right : Direction::right_to_left;
}

namespace {

void check_provenance(const AsymmetryResult& asym, const BootstrapCI& ci, const SurrogateEnsemble& surrogate) {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::provenance_mismatch, what); };
    if (ci.statistic != surrogate.statistic) fail("bootstrap and surrogate statistics differ");
    if (ci.n != asym.n || surrogate.n != asym.n) fail("n-gram orders differ");
    if (ci.corpus_fingerprint != asym.corpus_fingerprint ||
        surrogate.corpus_fingerprint != asym.corpus_fingerprint) {
        fail("inputs were computed on different corpora");
    }
    const auto value = statistic_value(asym, ci.statistic);
    if (value && *value != ci.point_estimate) fail("bootstrap point estimate does not match the asymmetry result");
}

// Significance of one statistic, with reasons appended when it fails.
bool significant_for(const AsymmetryResult& asym, const BootstrapCI& ci, const SurrogateEnsemble& surrogate,
                     double band_width, Band& band, std::vector<std::string>& reasons) {
    const std::string name(to_string(ci.statistic));
    band = surrogate_band(surrogate, band_width);
    if (!statistic_value(asym, ci.statistic)) {
        reasons.push_back(name + " is undefined on the corpus");
        return false;
    }
    if (surrogate.n_realizations == 0 || std::isnan(surrogate.mean)) {
        reasons.push_back(name + " surrogate ensemble has no defined realizations");
        return false;
    }
    if (!disjoint(ci, band)) {
        reasons.push_back(name + " confidence interval overlaps the surrogate band");
        return false;
    }
    return true;
}

void check_agreement(const AsymmetryResult& asym, DirectionVerdict& v) {
    const auto g = statistic_value(asym, Statistic::delta_g);
    const auto s = statistic_value(asym, Statistic::delta_s);
    v.agreement_checked = g.has_value() && s.has_value();
    v.agreement = !v.agreement_checked ||
                  direction_from_sign(Statistic::delta_g, *g) == direction_from_sign(Statistic::delta_s, *s);
}

}  // namespace

DirectionVerdict infer_direction(const AsymmetryResult& asym, const BootstrapCI& ci,
                                 const SurrogateEnsemble& surrogate, double band_width) {
    VerdictOptions options;
    options.band_width = band_width;
    options.basis = ci.statistic == Statistic::delta_g ? VerdictBasis::delta_g : VerdictBasis::delta_s;
    return infer_direction(asym, ci, surrogate, options);
}

DirectionVerdict infer_direction(const AsymmetryResult& asym, const BootstrapCI& ci,
                                 const SurrogateEnsemble& surrogate, const VerdictOptions& options) {
    if (options.basis == VerdictBasis::both) {
        throw Error(ErrorCode::invalid_argument, "basis 'both' needs evidence for both statistics");
    }
    const Statistic statistic = options.basis == VerdictBasis::delta_g ? Statistic::delta_g : Statistic::delta_s;
    if (ci.statistic != statistic) throw Error(ErrorCode::provenance_mismatch, "basis and bootstrap statistic differ");
    check_provenance(asym, ci, surrogate);
    if (!(options.band_width >= 0.0)) throw Error(ErrorCode::invalid_argument, "band width must be >= 0");

    DirectionVerdict v;
    v.basis = options.basis;
    v.pinned = options.pinned;
    v.ci = ci;
    v.surrogate = surrogate;
    v.band_width = options.band_width;
    check_agreement(asym, v);
    v.significant = significant_for(asym, ci, surrogate, options.band_width, v.band, v.reasons);

    const auto value = statistic_value(asym, statistic);
    const Direction sign = value ? direction_from_sign(statistic, *value) : Direction::inconclusive;
    if (v.significant && sign == Direction::inconclusive) v.reasons.push_back("statistic is exactly zero");
    if (!v.agreement && !v.pinned) v.reasons.push_back("delta_g and delta_s imply different directions");
    v.direction = v.significant && (v.agreement || v.pinned) ? sign : Direction::inconclusive;
    return v;
}

DirectionVerdict infer_direction_both(const AsymmetryResult& asym, const BootstrapCI& ci_g,
                                      const SurrogateEnsemble& surrogate_g, const BootstrapCI& ci_s,
                                      const SurrogateEnsemble& surrogate_s, double band_width) {
    if (ci_g.statistic != Statistic::delta_g || ci_s.statistic != Statistic::delta_s) {
        throw Error(ErrorCode::provenance_mismatch, "expected delta_g and delta_s evidence");
    }
    check_provenance(asym, ci_g, surrogate_g);
    check_provenance(asym, ci_s, surrogate_s);
    if (!(band_width >= 0.0)) throw Error(ErrorCode::invalid_argument, "band width must be >= 0");

    DirectionVerdict v;
    v.basis = VerdictBasis::both;
    v.ci = ci_g;
    v.surrogate = surrogate_g;
    v.ci_delta_s = ci_s;
    v.surrogate_delta_s = surrogate_s;
    v.band_width = band_width;
    check_agreement(asym, v);
    Band band_s;
    const bool g_ok = significant_for(asym, ci_g, surrogate_g, band_width, v.band, v.reasons);
    const bool s_ok = significant_for(asym, ci_s, surrogate_s, band_width, band_s, v.reasons);
    v.band_delta_s = band_s;
    v.significant = g_ok && s_ok;
    if (!v.agreement_checked) v.reasons.push_back("delta_s is unavailable");
    if (v.agreement_checked && !v.agreement) v.reasons.push_back("delta_g and delta_s imply different directions");

    const Direction sign = direction_from_sign(Statistic::delta_g, asym.delta_g);
    v.direction = v.significant && v.agreement && v.agreement_checked ? sign : Direction::inconclusive;
    return v;
}

}  // namespace signdir
