#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace signdir {

// Pinned, platform-independent generators. Reports depend on the exact
// streams, so none of the std:: distributions (implementation-defined) are
// used anywhere in the library.

// SplitMix64 finalizer; a bijection on 64-bit values.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Advances `state` by the SplitMix64 increment and returns the mixed value.
std::uint64_t splitmix64_next(std::uint64_t& state) noexcept;

// xoshiro256** 1.0, state seeded from SplitMix64(seed).
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // Uniform integer in [0, bound), Lemire's multiply-and-reject. bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;

private:
    std::uint64_t s_[4];
};

// Seed for replicate `index` of a run seeded with `master_seed`. For a fixed
// master seed the map index -> seed is injective, so every replicate gets
// its own stream no matter which thread evaluates it or in what order.
std::uint64_t derive_replicate_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

// Independent sub-streams of one master seed, one per resampling procedure.
enum class Stream : std::uint64_t {
    surrogate = 0x5355'5252,
    bootstrap = 0x424f'4f54,
    sweep = 0x5357'4550,
};

std::uint64_t derive_stream_seed(std::uint64_t master_seed, Stream stream) noexcept;

// Fisher-Yates, last position first.
template <class T>
void shuffle(std::span<T> items, Rng& rng) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

}  // namespace signdir
