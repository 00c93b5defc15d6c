#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <unordered_set>

#include "signdir/rng.hpp"

using namespace signdir;

TEST_SUITE("rng") {
    TEST_CASE("SplitMix64 reference values") {
        std::uint64_t state = 1234567;
        CHECK(splitmix64_next(state) == 6457827717110365317ull);
        CHECK(splitmix64_next(state) == 3203168211198807973ull);
        CHECK(splitmix64_next(state) == 9817491932198370423ull);
    }

    TEST_CASE("xoshiro256** pinned stream") {
        Rng rng(42);
        CHECK(rng() == 1546998764402558742ull);
        CHECK(rng() == 6990951692964543102ull);
        CHECK(rng() == 12544586762248559009ull);
    }

    TEST_CASE("replicate seeds") {
        CHECK(derive_replicate_seed(7, 0) == 7191089600892374487ull);
        CHECK(derive_replicate_seed(7, 1) == 309689372594955804ull);
        CHECK(derive_replicate_seed(7, 0) != derive_replicate_seed(7, 1));
        CHECK(derive_replicate_seed(99, 5) == derive_replicate_seed(99, 5));
        std::unordered_set<std::uint64_t> seen;
        for (std::uint64_t i = 0; i < 100000; ++i) seen.insert(derive_replicate_seed(2024, i));
        CHECK(seen.size() == 100000);
    }

    TEST_CASE("streams differ per purpose") {
        const auto a = derive_stream_seed(1, Stream::surrogate);
        const auto b = derive_stream_seed(1, Stream::bootstrap);
        const auto c = derive_stream_seed(1, Stream::sweep);
        CHECK(a != b);
        CHECK(b != c);
        CHECK(a != c);
    }

    TEST_CASE("bounded draws stay in range and look uniform") {
        Rng rng(3);
        std::array<int, 7> counts{};
        const int draws = 70000;
        for (int i = 0; i < draws; ++i) {
            const auto v = rng.below(7);
            REQUIRE(v < 7);
            ++counts[v];
        }
        double chi2 = 0.0;
        for (int c : counts) chi2 += (c - draws / 7.0) * (c - draws / 7.0) / (draws / 7.0);
        CHECK(chi2 < 22.5);  // 6 dof, p = 0.001
        CHECK(rng.below(1) == 0);
        for (int i = 0; i < 1000; ++i) {
            const double u = rng.uniform();
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
        }
    }

    TEST_CASE("shuffle permutes and covers all orders") {
        Rng rng(11);
        std::map<std::array<int, 3>, int> seen;
        for (int t = 0; t < 6000; ++t) {
            std::array<int, 3> v{0, 1, 2};
            shuffle(std::span<int>(v), rng);
            ++seen[v];
        }
        CHECK(seen.size() == 6);
        for (const auto& [perm, count] : seen) {
            CHECK(count > 850);
            CHECK(count < 1150);
        }
        std::vector<int> big(100);
        std::iota(big.begin(), big.end(), 0);
        shuffle(std::span<int>(big), rng);
        std::vector<int> sorted = big;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < 100; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
    }
}
