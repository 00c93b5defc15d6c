#include <doctest.h>

#include "signdir/direction.hpp"
#include "signdir/error.hpp"

using namespace signdir;

namespace {

struct Evidence {
    AsymmetryResult asym;
    BootstrapCI ci;
    SurrogateEnsemble surrogate;
};

Evidence evidence(double delta_g, double lower, double upper, double mean, double std,
                  std::optional<double> delta_s = std::nullopt) {
    Evidence e;
    e.asym.n = 1;
    e.asym.delta_g = delta_g;
    e.asym.delta_s = delta_s;
    e.asym.corpus_fingerprint = 42;
    e.ci.statistic = Statistic::delta_g;
    e.ci.point_estimate = delta_g;
    e.ci.lower = lower;
    e.ci.upper = upper;
    e.ci.corpus_fingerprint = 42;
    e.surrogate.statistic = Statistic::delta_g;
    e.surrogate.mean = mean;
    e.surrogate.std = std;
    e.surrogate.n_realizations = 1000;
    e.surrogate.corpus_fingerprint = 42;
    return e;
}

}  // namespace

TEST_SUITE("direction") {
    TEST_CASE("left to right") {
        const auto e = evidence(-0.50, -0.55, -0.45, 0.0, 0.01, 0.2);
        const auto v = infer_direction(e.asym, e.ci, e.surrogate, 2.0);
        CHECK(v.direction == Direction::left_to_right);
        CHECK(v.significant);
        CHECK(v.agreement);
        CHECK(v.band.lower == doctest::Approx(-0.02));
        CHECK(v.band.upper == doctest::Approx(0.02));
    }

    TEST_CASE("right to left") {
        const auto e = evidence(0.55, 0.40, 0.70, 0.0, 0.02, -0.3);
        const auto v = infer_direction(e.asym, e.ci, e.surrogate);
        CHECK(v.direction == Direction::right_to_left);
        CHECK(v.significant);
    }

    TEST_CASE("interval straddling the band is inconclusive") {
        const auto e = evidence(-0.05, -0.08, -0.01, 0.0, 0.01);
        const auto v = infer_direction(e.asym, e.ci, e.surrogate);
        CHECK(v.direction == Direction::inconclusive);
        CHECK_FALSE(v.significant);
        CHECK_FALSE(v.reasons.empty());
        // A narrower band separates them.
        CHECK(infer_direction(e.asym, e.ci, e.surrogate, 0.5).direction == Direction::left_to_right);
    }

    TEST_CASE("disagreement downgrades unless the basis is pinned") {
        const auto e = evidence(-0.5, -0.55, -0.45, 0.0, 0.01, -0.1);
        auto v = infer_direction(e.asym, e.ci, e.surrogate);
        CHECK(v.significant);
        CHECK_FALSE(v.agreement);
        CHECK(v.agreement_checked);
        CHECK(v.direction == Direction::inconclusive);

        VerdictOptions pinned;
        pinned.pinned = true;
        v = infer_direction(e.asym, e.ci, e.surrogate, pinned);
        CHECK(v.direction == Direction::left_to_right);
        CHECK_FALSE(v.agreement);
    }

    TEST_CASE("missing delta_s leaves agreement unchecked") {
        const auto e = evidence(-0.5, -0.55, -0.45, 0.0, 0.01);
        const auto v = infer_direction(e.asym, e.ci, e.surrogate);
        CHECK_FALSE(v.agreement_checked);
        CHECK(v.direction == Direction::left_to_right);
    }

    TEST_CASE("degenerate statistic is inconclusive") {
        auto e = evidence(0.0, 0.0, 0.0, 0.0, 0.0);
        e.asym.delta_g_degenerate = true;
        const auto v = infer_direction(e.asym, e.ci, e.surrogate);
        CHECK(v.direction == Direction::inconclusive);
        CHECK_FALSE(v.significant);
    }

    TEST_CASE("delta_s basis") {
        auto e = evidence(-0.5, -0.55, -0.45, 0.0, 0.01, 0.3);
        BootstrapCI ci = e.ci;
        ci.statistic = Statistic::delta_s;
        ci.point_estimate = 0.3;
        ci.lower = 0.25;
        ci.upper = 0.35;
        SurrogateEnsemble s = e.surrogate;
        s.statistic = Statistic::delta_s;
        const auto v = infer_direction(e.asym, ci, s);
        CHECK(v.basis == VerdictBasis::delta_s);
        CHECK(v.direction == Direction::left_to_right);

        const auto both = infer_direction_both(e.asym, e.ci, e.surrogate, ci, s);
        CHECK(both.basis == VerdictBasis::both);
        CHECK(both.direction == Direction::left_to_right);
        CHECK(both.significant);

        ci.lower = -0.01;
        const auto weak = infer_direction_both(e.asym, e.ci, e.surrogate, ci, s);
        CHECK(weak.direction == Direction::inconclusive);
    }

    TEST_CASE("mismatched provenance is an error") {
        auto check_mismatch = [](Evidence e) {
            try {
                infer_direction(e.asym, e.ci, e.surrogate);
                FAIL("expected provenance error");
            } catch (const Error& err) {
                CHECK(err.code() == ErrorCode::provenance_mismatch);
            }
        };
        auto e = evidence(-0.5, -0.55, -0.45, 0.0, 0.01);
        e.surrogate.statistic = Statistic::delta_s;
        check_mismatch(e);
        e = evidence(-0.5, -0.55, -0.45, 0.0, 0.01);
        e.ci.corpus_fingerprint = 7;
        check_mismatch(e);
        e = evidence(-0.5, -0.55, -0.45, 0.0, 0.01);
        e.surrogate.n = 2;
        check_mismatch(e);
        e = evidence(-0.5, -0.55, -0.45, 0.0, 0.01);
        e.ci.point_estimate = -0.4;
        check_mismatch(e);
    }

    TEST_CASE("names") {
        CHECK(to_string(Direction::left_to_right) == "LeftToRight");
        CHECK(to_string(Direction::right_to_left) == "RightToLeft");
        CHECK(to_string(Direction::inconclusive) == "Inconclusive");
        CHECK(parse_verdict_basis("both") == VerdictBasis::both);
        CHECK_FALSE(parse_verdict_basis("gini").has_value());
        CHECK(direction_from_sign(Statistic::delta_s, 0.1) == Direction::left_to_right);
        CHECK(direction_from_sign(Statistic::delta_g, 0.1) == Direction::right_to_left);
    }
}
