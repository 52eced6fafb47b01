#include <numeric>

#include <benchmark/benchmark.h>

#include "gtx/acquisition.hpp"
#include "gtx/division.hpp"
#include "gtx/errors.hpp"
#include "gtx/experiments.hpp"
#include "gtx/schedulers.hpp"

using namespace gtx;

namespace {

std::vector<UserId> iota_users(std::size_t m) {
  std::vector<UserId> g(m);
  std::iota(g.begin(), g.end(), 0);
  return g;
}

void BM_SampleInstance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_instance(n, n, 0.1, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_SampleInstance)->Arg(256)->Arg(1024)->Arg(4096);

// Existence search on the root group of a sweep-sized instance.
void BM_FindValidDivision(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto rule = state.range(1) ? SplitRule::AllowEqual : SplitRule::Strict;
  Rng rng(2);
  const auto s = sample_instance(160, m, 0.1, rng);
  const auto group = iota_users(m);
  for (auto _ : state) benchmark::DoNotOptimize(find_valid_division(s, group, DivisionSearch::Auto, rule));
}
BENCHMARK(BM_FindValidDivision)->ArgsProduct({{16, 256, 4096}, {0, 1}});

void BM_FirstUndividableGroup(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const auto s = sample_instance(160, m, 0.1, rng);
  const auto group = iota_users(m);
  for (auto _ : state) benchmark::DoNotOptimize(first_undividable_group(s, group, SplitRule::AllowEqual));
}
BENCHMARK(BM_FirstUndividableGroup)->Arg(256)->Arg(1024);

void BM_TreeSplit(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const auto s = sample_instance(64, m, 0.3, rng);
  const auto group = iota_users(m);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(tree_split(s, group, RandomRetry{}, rng));
    } catch (const NoValidDivision&) {
    }
  }
}
BENCHMARK(BM_TreeSplit)->Arg(16)->Arg(64);

void BM_GreedyCompletion(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  const auto s = sample_instance(64, m, 0.1, rng);
  const auto group = iota_users(m);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_completion(s, group));
}
BENCHMARK(BM_GreedyCompletion)->Arg(16)->Arg(64);

void BM_PartitionTreeSplit(benchmark::State& state) {
  const std::size_t n = 4096;
  const auto spec = linear_aposteriori(n, 1.0, 16, 0.5);
  Rng rng(6);
  const auto s = sample_instance(n, n, 1.0 - pick_q(spec), rng);
  for (auto _ : state) benchmark::DoNotOptimize(partition_tree_split(s, spec, Target::Complete, RandomRetry{}, rng));
}
BENCHMARK(BM_PartitionTreeSplit)->Unit(benchmark::kMillisecond);

void BM_OptimalSchedule(benchmark::State& state) {
  Rng rng(7);
  const auto s = sample_instance(5, 5, 0.3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_schedule(s));
}
BENCHMARK(BM_OptimalSchedule);

}  // namespace

BENCHMARK_MAIN();
