#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "ssepfree/bernoulli.hpp"
#include "ssepfree/cumulants.hpp"
#include "ssepfree/freeprob.hpp"
#include "ssepfree/graphs.hpp"
#include "ssepfree/partitions.hpp"
#include "ssepfree/scaling.hpp"
#include "ssepfree/ssep.hpp"

using namespace ssepfree;

static void BM_EnumeratePartitions(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_partitions(n));
}
BENCHMARK(BM_EnumeratePartitions)->DenseRange(6, 10, 2);

static void BM_ChromaticPolynomial(benchmark::State& state) {
    const auto g = SimpleGraph::cycle(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(chromatic_polynomial(g));
}
BENCHMARK(BM_ChromaticPolynomial)->Arg(8)->Arg(12)->Arg(16);

static void BM_MomentsToCumulants(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    MomentTable m([](const std::vector<int>& key) { return 1.0 / (1.0 + static_cast<double>(key.size())); });
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    for (auto _ : state) benchmark::DoNotOptimize(moments_to_cumulants(m, idx));
}
BENCHMARK(BM_MomentsToCumulants)->DenseRange(4, 8, 2);

static void BM_GraphExpansion(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto model = BernoulliModel::random(3, rng);
    const auto table = noncoincident_cumulants(model);
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(graph_expansion_W(table, 3, degree));
}
BENCHMARK(BM_GraphExpansion)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_FreeCumulantsFromMoments(benchmark::State& state) {
    const auto b = GridFunction::from_function(1024, [](double x) { return 0.3 * std::sin(3 * x); });
    const auto m = moments_of_b(b, 12);
    for (auto _ : state) benchmark::DoNotOptimize(free_cumulants_from_moments(m, 12));
}
BENCHMARK(BM_FreeCumulantsFromMoments);

static void BM_FreeEnergySsep(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const auto h = GridFunction::from_function(M, [](double x) { return 0.8 * std::sin(M_PI * x); });
    for (auto _ : state) benchmark::DoNotOptimize(F_ssep_free(h).F);
}
BENCHMARK(BM_FreeEnergySsep)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_ClassicalShooting(benchmark::State& state) {
    const auto h = GridFunction::from_function(512, [](double x) { return 0.8 * std::sin(M_PI * x); });
    for (auto _ : state) benchmark::DoNotOptimize(classical_F_ssep(h).F);
}
BENCHMARK(BM_ClassicalShooting)->Unit(benchmark::kMillisecond);

static void BM_RateFunctionSsep(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const auto n = GridFunction::from_function(M, [](double x) { return x + 0.1 * std::sin(M_PI * x); });
    for (auto _ : state) benchmark::DoNotOptimize(rate_function_ssep(n).value);
}
BENCHMARK(BM_RateFunctionSsep)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_ExactSteadyState(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(exact_steady_state(N));
}
BENCHMARK(BM_ExactSteadyState)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_Gillespie(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(simulate_ssep(6, 1e5, 7, 20));
}
BENCHMARK(BM_Gillespie)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
