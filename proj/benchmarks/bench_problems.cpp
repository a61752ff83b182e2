#include <benchmark/benchmark.h>

#include "paramctl/problems.hpp"
#include "paramctl/rng.hpp"

using namespace paramctl;

static void BM_leadingones_full_eval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    LeadingOnesProblem problem(n);
    RandomSource rng(11, 0);
    BitString x = random_bitstring(n, rng);
    // a mid-run parent: first half agrees with the target
    for (int i = 0; i < n / 2; ++i) x[static_cast<std::size_t>(i)] = 1;
    for (auto _ : state) benchmark::DoNotOptimize(problem.evaluate(x));
}
BENCHMARK(BM_leadingones_full_eval)->Arg(1000)->Arg(10000);

static void BM_leadingones_delta_eval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    LeadingOnesProblem problem(n);
    RandomSource rng(11, 0);
    BitString x = random_bitstring(n, rng);
    for (int i = 0; i < n / 2; ++i) x[static_cast<std::size_t>(i)] = 1;
    const double fx = problem.evaluate(x);
    std::vector<int> flips;
    for (auto _ : state) {
        rng.sample_distinct(n, 2, flips);
        benchmark::DoNotOptimize(problem.evaluate_flipped(x, fx, flips));
    }
}
BENCHMARK(BM_leadingones_delta_eval)->Arg(1000)->Arg(10000);

static void BM_onemax_delta_eval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    OneMaxProblem problem(n);
    RandomSource rng(11, 0);
    const BitString x = random_bitstring(n, rng);
    const double fx = problem.evaluate(x);
    std::vector<int> flips;
    for (auto _ : state) {
        rng.sample_distinct(n, 3, flips);
        benchmark::DoNotOptimize(problem.evaluate_flipped(x, fx, flips));
    }
}
BENCHMARK(BM_onemax_delta_eval)->Arg(1000)->Arg(10000);

static void BM_mst_eval(benchmark::State& state) {
    const GraphInstance graph = gen_connected_triangles(static_cast<int>(state.range(0)), {});
    MstProblem problem(graph);
    RandomSource rng(11, 0);
    const BitString x = random_bitstring(graph.edge_count(), rng);
    for (auto _ : state) benchmark::DoNotOptimize(problem.evaluate(x));
}
BENCHMARK(BM_mst_eval)->Arg(5)->Arg(50);
