#include <benchmark/benchmark.h>

#include "paramctl/operators.hpp"
#include "paramctl/rng.hpp"

using namespace paramctl;

static void BM_flip_k_sampling(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    RandomSource rng(7, 0);
    std::vector<int> flips;
    for (auto _ : state) {
        sample_flip_k(n, k, rng, flips);
        benchmark::DoNotOptimize(flips.data());
    }
}
BENCHMARK(BM_flip_k_sampling)->Args({1000, 1})->Args({1000, 3})->Args({10000, 64});

static void BM_standard_bit_mutation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double p = 1.0 / n;
    RandomSource rng(7, 0);
    std::vector<int> flips;
    for (auto _ : state) {
        sample_standard_mutation(n, p, rng, flips);
        benchmark::DoNotOptimize(flips.data());
    }
}
BENCHMARK(BM_standard_bit_mutation)->Arg(1000)->Arg(10000);

static void BM_binomial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double p = static_cast<double>(state.range(1)) / 1000.0;
    RandomSource rng(7, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.binomial(n, p));
    }
}
BENCHMARK(BM_binomial)->Args({1000, 1})->Args({1000, 100})->Args({10000, 500});

BENCHMARK_MAIN();
