#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "signdir/error.hpp"
#include "signdir/positional.hpp"
#include "signdir/resampling.hpp"
#include "test_support.hpp"

using namespace signdir;

namespace {

SignCorpus skewed(std::uint64_t seed, std::size_t words = 300) {
    std::mt19937_64 rng(seed);
    return testsupport::random_corpus(rng, {words, 10, 2, 7, 0.2, 0.6});
}

ResamplingOptions threads(unsigned t) {
    ResamplingOptions o;
    o.threads = t;
    return o;
}

}  // namespace

TEST_SUITE("resampling") {
    TEST_CASE("permutation is the identity on doubled signs") {
        const auto c = SignCorpus::from_words({{"a", "a"}, {"b", "b"}}, CountingMode::frequency_weighted, {2, 1});
        const auto empirical = asymmetry(c, 1).delta_g;
        const auto e = surrogate_ensemble(c, 1, Statistic::delta_g, 50, 9);
        CHECK(e.n_realizations == 50);
        for (double v : e.replicates) CHECK(v == empirical);
    }

    TEST_CASE("degenerate realizations are counted as missing") {
        const auto c = SignCorpus::from_words({{"a", "a"}}, CountingMode::frequency_weighted, {4});
        const auto e = surrogate_ensemble(c, 1, Statistic::delta_g, 20, 1);
        CHECK(e.n_realizations == 0);
        CHECK(e.missing == 20);
        CHECK(e.requested == 20);
        CHECK(std::isnan(e.mean));
    }

    TEST_CASE("realizations preserve every sequence's multiset, length and weight") {
        const auto c = skewed(1);
        for (std::size_t r = 0; r < 5; ++r) {
            const auto s = surrogate_realization(c, 77, r);
            REQUIRE(s.size() == c.size());
            CHECK(s.signary_ptr() == c.signary_ptr());
            for (std::size_t i = 0; i < c.size(); ++i) {
                auto a = c.sequence(i).signs;
                auto b = s.sequence(i).signs;
                CHECK(s.weight(i) == c.weight(i));
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                CHECK(a == b);
            }
            CHECK(positional_distribution(s, 1, PositionClass::any).counts() ==
                  positional_distribution(c, 1, PositionClass::any).counts());
        }
    }

    TEST_CASE("each word is permuted uniformly") {
        const auto c = testsupport::corpus_of({"abc", "de"});
        std::map<std::vector<std::string>, int> seen;
        for (std::size_t r = 0; r < 3000; ++r) ++seen[surrogate_realization(c, 5, r).sign_names(0)];
        CHECK(seen.size() == 6);
        for (const auto& [w, n] : seen) {
            CHECK(n > 400);
            CHECK(n < 600);
        }
    }

    TEST_CASE("surrogates commute with reversal") {
        const auto c = skewed(2);
        const auto r = reverse_corpus(c);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(surrogate_realization(r, 13, i) == reverse_corpus(surrogate_realization(c, 13, i)));
        }
        const auto ec = surrogate_ensembles(c, 1, 40, 13);
        const auto er = surrogate_ensembles(r, 1, 40, 13);
        REQUIRE(ec.delta_g.replicates.size() == er.delta_g.replicates.size());
        for (std::size_t k = 0; k < ec.delta_g.replicates.size(); ++k) {
            CHECK(er.delta_g.replicates[k] == -ec.delta_g.replicates[k]);
        }
        CHECK(er.delta_g.mean == -ec.delta_g.mean);
        CHECK(er.delta_s.mean == -ec.delta_s.mean);
        CHECK(er.delta_g.std == ec.delta_g.std);
    }

    TEST_CASE("ensemble summary is recomputable") {
        const auto e = surrogate_ensemble(skewed(3), 2, Statistic::delta_s, 200, 4);
        CHECK(e.n_realizations == e.replicates.size());
        double sum = 0.0;
        for (double v : e.replicates) sum += v;
        const double mean = sum / double(e.replicates.size());
        double ss = 0.0;
        for (double v : e.replicates) ss += (v - mean) * (v - mean);
        CHECK(std::abs(e.mean - mean) < 1e-12);
        CHECK(std::abs(e.std - std::sqrt(ss / double(e.replicates.size()))) < 1e-12);
    }

    TEST_CASE("surrogate mean sits near zero, empirical far from it") {
        const auto c = skewed(4, 1500);
        const auto e = surrogate_ensemble(c, 1, Statistic::delta_g, 400, 8);
        CHECK(std::abs(e.mean) < 3.0 * e.std / std::sqrt(400.0));
        CHECK(std::abs(asymmetry(c, 1).delta_g - e.mean) > 5.0 * e.std);
    }

    TEST_CASE("results do not depend on thread count") {
        const auto c = skewed(5);
        const auto one = surrogate_ensembles(c, 2, 64, 21, threads(1));
        const auto four = surrogate_ensembles(c, 2, 64, 21, threads(4));
        CHECK(one.delta_g.replicates == four.delta_g.replicates);
        CHECK(one.delta_s.replicates == four.delta_s.replicates);

        const std::vector<std::size_t> sizes{20, 100};
        const auto s1 = sample_size_sweep(c, 1, sizes, 30, 3, threads(1));
        const auto s3 = sample_size_sweep(c, 1, sizes, 30, 3, threads(3));
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            CHECK(s1[k].empirical_mean == s3[k].empirical_mean);
            CHECK(s1[k].randomized_std == s3[k].randomized_std);
        }
    }

    TEST_CASE("different seeds give different ensembles") {
        const auto c = skewed(6);
        CHECK(surrogate_ensemble(c, 1, Statistic::delta_g, 10, 1).replicates !=
              surrogate_ensemble(c, 1, Statistic::delta_g, 10, 2).replicates);
    }

    TEST_CASE("sweep over the whole corpus reproduces the empirical value") {
        const auto c = skewed(7);
        const std::vector<std::size_t> sizes{c.size()};
        const auto points = sample_size_sweep(c, 1, sizes, 1, 99);
        REQUIRE(points.size() == 1);
        CHECK(points[0].empirical_mean == asymmetry(c, 1).delta_g);
        CHECK(points[0].empirical_std == 0.0);
        CHECK(points[0].n_samples == 1);
    }

    TEST_CASE("sweep randomized series is centred on zero") {
        const auto c = skewed(8, 1000);
        const std::vector<std::size_t> sizes{50, 200, 800};
        for (const auto& p : sample_size_sweep(c, 1, sizes, 200, 17)) {
            CAPTURE(p.sample_size);
            CHECK(p.empirical_std >= 0.0);
            CHECK(p.randomized_std >= 0.0);
            CHECK(std::abs(p.randomized_mean) < 3.0 * p.randomized_std / std::sqrt(200.0));
        }
    }

    TEST_CASE("sweep preconditions") {
        const auto c = skewed(9, 50);
        const std::vector<std::size_t> too_big{51};
        CHECK_THROWS_AS(sample_size_sweep(c, 1, too_big, 1, 1), Error);
        const std::vector<std::size_t> ok{10};
        CHECK_THROWS_AS(sample_size_sweep(c, 1, ok, 0, 1), Error);
        CHECK_THROWS_AS(surrogate_ensemble(c, 1, Statistic::delta_g, 0, 1), Error);
    }

    TEST_CASE("sweep CSV") {
        std::vector<SweepPoint> points{{10, 5, -0.1, 0.05, 0.0, 0.06, 0, 0}};
        std::ostringstream out;
        write_sweep_csv(out, points);
        CHECK(out.str() == "N,empirical_mean,empirical_std,randomized_mean,randomized_std\n10,-0.1,0.05,0,0.06\n");
        CHECK(bands_separated({1000, 1, -0.4, 0.01, 0.0, 0.01, 0, 0}));
        CHECK_FALSE(bands_separated(points[0]));
    }

    TEST_CASE("default sweep sizes") {
        CHECK(default_sweep_sizes(1200) == std::vector<std::size_t>{10, 20, 50, 100, 200, 500, 1000, 1200});
        CHECK(default_sweep_sizes(5) == std::vector<std::size_t>{5});
    }

    TEST_CASE("bootstrap indices keep the count and stay inside the corpus") {
        const auto idx = bootstrap_indices(40, 3, 0);
        CHECK(idx.size() == 40);
        for (auto i : idx) CHECK(i < 40);
        CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() < 40);
        CHECK(bootstrap_indices(40, 3, 0) == idx);
        CHECK(bootstrap_indices(40, 3, 1) != idx);
    }
}
