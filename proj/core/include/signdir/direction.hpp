#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signdir/bootstrap.hpp"
#include "signdir/inequality.hpp"
#include "signdir/resampling.hpp"

namespace signdir {

enum class Direction { left_to_right, right_to_left, inconclusive };

std::string_view to_string(Direction direction);

enum class VerdictBasis { delta_g, delta_s, both };

std::string_view to_string(VerdictBasis basis);
std::optional<VerdictBasis> parse_verdict_basis(std::string_view text);

// Surrogate band: mean +- width * std.
struct Band {
    double lower = 0.0;
    double upper = 0.0;
};

Band surrogate_band(const SurrogateEnsemble& surrogate, double band_width);

// True iff [ci.lower, ci.upper] and the band share no point.
bool disjoint(const BootstrapCI& ci, const Band& band);

// Reading direction implied by the sign of a statistic:
// delta_g < 0 or delta_s > 0 is left to right.
Direction direction_from_sign(Statistic statistic, double value);

struct VerdictOptions {
    double band_width = 2.0;
    VerdictBasis basis = VerdictBasis::delta_g;
    // A pinned basis ignores disagreement between the two statistics.
    bool pinned = false;
};

struct DirectionVerdict {
    Direction direction = Direction::inconclusive;
    VerdictBasis basis = VerdictBasis::delta_g;
    bool significant = false;
    BootstrapCI ci;
    SurrogateEnsemble surrogate;
    Band band;
    double band_width = 2.0;
    // The delta_s evidence when basis is both.
    std::optional<BootstrapCI> ci_delta_s;
    std::optional<SurrogateEnsemble> surrogate_delta_s;
    std::optional<Band> band_delta_s;
    bool agreement = true;
    bool agreement_checked = false;  // false when delta_s is unavailable
    bool pinned = false;
    std::vector<std::string> reasons;  // why the verdict is inconclusive
};

// Single-statistic verdict; the basis is the statistic of `ci`.
DirectionVerdict infer_direction(const AsymmetryResult& asym, const BootstrapCI& ci,
                                 const SurrogateEnsemble& surrogate, double band_width = 2.0);

DirectionVerdict infer_direction(const AsymmetryResult& asym, const BootstrapCI& ci,
                                 const SurrogateEnsemble& surrogate, const VerdictOptions& options);

// Both statistics must be significant and agree.
DirectionVerdict infer_direction_both(const AsymmetryResult& asym, const BootstrapCI& ci_g,
                                      const SurrogateEnsemble& surrogate_g, const BootstrapCI& ci_s,
                                      const SurrogateEnsemble& surrogate_s, double band_width = 2.0);

}  // namespace signdir
