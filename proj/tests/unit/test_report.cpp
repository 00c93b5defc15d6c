#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "signdir/report.hpp"
#include "test_support.hpp"

using namespace signdir;

namespace {

AnalysisSettings quick(unsigned threads = 1) {
    AnalysisSettings s;
    s.realizations = 100;
    s.resamples = 100;
    s.threads = threads;
    return s;
}

SignCorpus skewed(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return testsupport::random_corpus(rng, {600, 9, 2, 6, 0.0, 0.6});
}

bool has_warning(const AnalysisReport& r, const std::string& fragment) {
    for (const auto& w : r.warnings) {
        if (w.find(fragment) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_SUITE("report") {
    TEST_CASE("report is byte-identical across runs and thread counts") {
        const auto c = skewed(1);
        const auto a = dump_json(to_json(build_report(c, "toy", quick(1))));
        const auto b = dump_json(to_json(build_report(c, "toy", quick(1))));
        const auto d = dump_json(to_json(build_report(c, "toy", quick(4))));
        CHECK(a == b);
        CHECK(a == d);
        CHECK(a.back() == '\n');
    }

    TEST_CASE("report fields") {
        const auto c = skewed(2);
        const auto report = build_report(c, "toy", quick());
        const auto j = to_json(report);
        CHECK(j["schema"] == kReportSchema);
        CHECK(j["corpus"]["label"] == "toy");
        CHECK(j["corpus"]["sequences"] == c.size());
        CHECK(j["orders"].size() == 2);
        CHECK(j["settings"]["seed"] == 1);
        CHECK_FALSE(j["settings"].contains("threads"));
        REQUIRE(report.verdict.has_value());
        CHECK(report.verdict->direction == Direction::left_to_right);
        CHECK(j["verdict"]["direction"] == "LeftToRight");
        const auto* o1 = report.order(1);
        REQUIRE(o1);
        CHECK(o1->asymmetry->delta_g == asymmetry(c, 1).delta_g);
        CHECK(j["orders"][0]["surrogate"]["delta_g"]["replicates"].size() == 100);
    }

    TEST_CASE("replicates can be omitted") {
        auto s = quick();
        s.include_replicates = false;
        const auto j = to_json(build_report(skewed(2), "toy", s));
        CHECK_FALSE(j["orders"][0]["surrogate"]["delta_g"].contains("replicates"));
    }

    TEST_CASE("reversing the corpus flips the verdict") {
        const auto c = skewed(3);
        const auto forward = build_report(c, "f", quick());
        const auto backward = build_report(reverse_corpus(c), "b", quick());
        REQUIRE(forward.verdict);
        REQUIRE(backward.verdict);
        CHECK(forward.verdict->direction == Direction::left_to_right);
        CHECK(backward.verdict->direction == Direction::right_to_left);
        CHECK(forward.order(1)->asymmetry->delta_g == -backward.order(1)->asymmetry->delta_g);
    }

    TEST_CASE("tiny corpus is inconclusive with a power warning") {
        const auto c = testsupport::corpus_of({"abc", "bca", "cab"});
        const auto report = build_report(c, "tiny", quick());
        CHECK(has_warning(report, "power"));
        if (report.verdict) CHECK(report.verdict->direction == Direction::inconclusive);
    }

    TEST_CASE("a filter that removes everything gives null entropy with a reason") {
        auto s = quick();
        s.asymmetry.entropy.threshold = 1e9;
        const auto report = build_report(skewed(4), "toy", s);
        const auto j = to_json(report);
        const auto& a = j["orders"][0]["asymmetry"];
        CHECK(a["delta_s"].is_null());
        CHECK_FALSE(a["delta_s_reason"].get<std::string>().empty());
        CHECK(report.order(1)->asymmetry->delta_g != 0.0);
    }

    TEST_CASE("orders without n-grams are reported, not fatal") {
        auto s = quick();
        s.orders = {1, 9};
        const auto report = build_report(skewed(5), "toy", s);
        const auto* o9 = report.order(9);
        REQUIRE(o9);
        CHECK_FALSE(o9->asymmetry.has_value());
        CHECK_FALSE(o9->error.empty());
        CHECK(report.verdict.has_value());
    }

    TEST_CASE("sweep in the report") {
        auto s = quick();
        s.sweep = SweepSettings{{10, 100, 100000}, 20};
        const auto report = build_report(skewed(6), "toy", s);
        CHECK(report.sweep.size() == 2);
        CHECK(has_warning(report, "100000"));
    }

    TEST_CASE("json numbers") {
        CHECK(json_number(std::nan("")).is_null());
        CHECK(json_number(INFINITY).is_null());
        CHECK(json_number(0.1 + 0.2).get<double>() == 0.3);
        CHECK(hex64(255) == "00000000000000ff");
    }

    TEST_CASE("text summary mentions the verdict") {
        std::ostringstream s;
        write_text_summary(s, build_report(skewed(7), "toy", quick()));
        CHECK(s.str().find("LeftToRight") != std::string::npos);
    }
}
