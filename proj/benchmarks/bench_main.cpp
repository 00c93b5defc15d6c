#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "signdir/bootstrap.hpp"
#include "signdir/corpus_config.hpp"
#include "signdir/inequality.hpp"
#include "signdir/positional.hpp"
#include "signdir/resampling.hpp"

using namespace signdir;

namespace {

const SignCorpus& english() {
    static const SignCorpus corpus =
        load_corpus(load_corpus_config(std::filesystem::path(SIGNDIR_BENCH_DATA_DIR) / "english.json"));
    return corpus;
}

ResamplingOptions single_thread() {
    ResamplingOptions o;
    o.threads = 1;
    return o;
}

}  // namespace

static void BM_Gini(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> count(0, 100000);
    std::vector<double> w(static_cast<std::size_t>(state.range(0)));
    for (auto& x : w) x = count(rng);
    for (auto _ : state) benchmark::DoNotOptimize(gini_coefficient(w));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gini)->RangeMultiplier(8)->Range(8, 32768)->Complexity();

static void BM_LoadEnglish(benchmark::State& state) {
    const auto config = load_corpus_config(std::filesystem::path(SIGNDIR_BENCH_DATA_DIR) / "english.json");
    for (auto _ : state) benchmark::DoNotOptimize(load_corpus(config).size());
}
BENCHMARK(BM_LoadEnglish)->Unit(benchmark::kMillisecond);

static void BM_TerminalDistributions(benchmark::State& state) {
    const auto& c = english();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(positional_distribution(c, n, PositionClass::left_terminal).total());
        benchmark::DoNotOptimize(positional_distribution(c, n, PositionClass::right_terminal).total());
    }
}
BENCHMARK(BM_TerminalDistributions)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Asymmetry(benchmark::State& state) {
    const auto& c = english();
    for (auto _ : state) benchmark::DoNotOptimize(asymmetry(c, static_cast<int>(state.range(0))).delta_g);
}
BENCHMARK(BM_Asymmetry)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

// Per-realization cost: the ensemble size is the iteration count.
static void BM_SurrogateRealizations(benchmark::State& state) {
    const auto& c = english();
    const auto realizations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(surrogate_ensembles(c, 1, realizations, 1, single_thread()).delta_g.mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SurrogateRealizations)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Bootstrap(benchmark::State& state) {
    const auto& c = english();
    for (auto _ : state) {
        benchmark::DoNotOptimize(bootstrap_cis(c, static_cast<int>(state.range(0)), 100, 0.95, 1, single_thread()));
    }
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_Bootstrap)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SweepSize(benchmark::State& state) {
    const auto& c = english();
    const std::vector<std::size_t> sizes{static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(sample_size_sweep(c, 1, sizes, 100, 1, single_thread()));
}
BENCHMARK(BM_SweepSize)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
