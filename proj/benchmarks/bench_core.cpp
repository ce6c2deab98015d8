#include "insitu/limit_law.hpp"
#include "insitu/permute.hpp"
#include "insitu/recurrence.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

namespace {

void BM_PermuteInPlace(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    insitu::SplitMix64 rng(42);
    auto p = insitu::Permutation::random(n, rng);
    std::vector<int> values(static_cast<std::size_t>(n));
    for (auto _ : state) {
        std::iota(values.begin(), values.end(), 0);
        benchmark::DoNotOptimize(insitu::permute_in_place(std::span<int>(values), p));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PermuteInPlace)->Range(1 << 10, 1 << 18);

void BM_ExactDistribution(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(insitu::exact_distribution(n));
}
BENCHMARK(BM_ExactDistribution)->Arg(10)->Arg(20)->Arg(30)->Arg(40);

void BM_FloatMoments(benchmark::State& state)
{
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(insitu::moments_exact(n_max, insitu::MomentMode::floating));
}
BENCHMARK(BM_FloatMoments)->Arg(1000)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_LimitPoolGeneration(benchmark::State& state)
{
    const std::int64_t pool = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(insitu::simulate_limit(pool, 5, 7));
    state.SetItemsProcessed(state.iterations() * pool * 5);
}
BENCHMARK(BM_LimitPoolGeneration)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SimulateYn(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    auto table = insitu::moments_exact(n, insitu::MomentMode::floating);
    for (auto _ : state)
        benchmark::DoNotOptimize(insitu::simulate_Yn(n, 1000, table, 7));
}
BENCHMARK(BM_SimulateYn)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
