#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "runperm/adaptive_sort.hpp"
#include "runperm/generate.hpp"

namespace {

constexpr std::size_t kN = 1 << 20;

std::vector<std::size_t> with_runs(std::size_t rho) {
  runperm::Rng rng(rho);
  const auto lengths = runperm::random_composition(kN, rho, rng);
  return runperm::runs_permutation(lengths, {}, rng);
}

// range(0): rho. Comparisons are reported per element.
void BM_SortByRuns(benchmark::State& state) {
  const auto v = with_runs(static_cast<std::size_t>(state.range(0)));
  std::size_t comparisons = 0;
  for (auto _ : state) {
    auto r = runperm::sort_by_runs(std::span<const std::size_t>(v));
    comparisons = r.stats.comparisons;
    benchmark::DoNotOptimize(r.sorted.data());
  }
  state.counters["cmp_per_elem"] = static_cast<double>(comparisons) / static_cast<double>(kN);
}

void BM_StdStableSort(benchmark::State& state) {
  const auto v = with_runs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto w = v;
    std::stable_sort(w.begin(), w.end());
    benchmark::DoNotOptimize(w.data());
  }
}

void BM_SortBySus(benchmark::State& state) {
  runperm::Rng rng(9);
  const auto v = runperm::sus_permutation(kN, static_cast<std::size_t>(state.range(0)),
                                          runperm::InterleaveLaw::geometric, false, rng);
  std::size_t comparisons = 0;
  for (auto _ : state) {
    auto r = runperm::sort_by_sus(std::span<const std::size_t>(v));
    comparisons = r.stats.comparisons;
    benchmark::DoNotOptimize(r.sorted.data());
  }
  state.counters["cmp_per_elem"] = static_cast<double>(comparisons) / static_cast<double>(kN);
}

BENCHMARK(BM_SortByRuns)->Arg(2)->Arg(64)->Arg(4096)->Arg(262144)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StdStableSort)->Arg(2)->Arg(64)->Arg(4096)->Arg(262144)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SortBySus)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
