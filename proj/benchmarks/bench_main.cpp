#include <benchmark/benchmark.h>

#include <cstdint>
#include <cstdio>
#include <vector>

#include "dsched/distribution.hpp"
#include "dsched/mailsort.hpp"
#include "dsched/optimize.hpp"
#include "dsched/oracle.hpp"
#include "dsched/random.hpp"
#include "dsched/rules.hpp"
#include "dsched/value.hpp"

namespace {

std::vector<dsched::Rule> random_rules(int n, std::int64_t runtime_scale) {
  dsched::Rng rng(99);
  std::vector<dsched::Rule> rules;
  for (int j = 0; j < n; ++j) {
    char id[12];
    std::snprintf(id, sizeof id, "r%03d", j);
    rules.push_back({id, rng.uniform01(),
                     runtime_scale * (1 + static_cast<std::int64_t>(rng.below(10)))});
  }
  return rules;
}

}  // namespace

// Table fill dominated by the rule count; columns stay near 5.5*n.
static void BM_OptimizeGeneralRules(benchmark::State& state) {
  const auto rules = random_rules(static_cast<int>(state.range(0)), 1);
  const auto dist = dsched::DeadlineDistribution::poisson(9.0);
  for (auto _ : state) {
    auto res = dsched::optimize_general(rules, dist);
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_OptimizeGeneralRules)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

// Same rule count, stretched runtimes: one column per unit of total runtime.
static void BM_OptimizeGeneralHorizon(benchmark::State& state) {
  const auto rules = random_rules(20, state.range(0));
  const auto dist = dsched::DeadlineDistribution::exponential(5e-4);
  for (auto _ : state) {
    auto res = dsched::optimize_general(rules, dist);
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_OptimizeGeneralHorizon)->Arg(50)->Arg(100)->Arg(200)->Arg(400);

static void BM_OracleSorted(benchmark::State& state) {
  const auto rules = random_rules(static_cast<int>(state.range(0)), 1);
  const auto dist = dsched::DeadlineDistribution::uniform(0, 20);
  for (auto _ : state) {
    auto rep = dsched::oracle_optimize(
        rules,
        [&](const dsched::Schedule& s) { return dsched::value_stochastic(s, dist); },
        dsched::SearchSpace::kSortedOnly);
    benchmark::DoNotOptimize(rep.best_value);
  }
}
BENCHMARK(BM_OracleSorted)->Arg(6)->Arg(9)->Arg(12);

static void BM_OraclePermutations(benchmark::State& state) {
  const auto rules = random_rules(static_cast<int>(state.range(0)), 1);
  const auto dist = dsched::DeadlineDistribution::uniform(0, 20);
  for (auto _ : state) {
    auto rep = dsched::oracle_optimize(
        rules,
        [&](const dsched::Schedule& s) { return dsched::value_stochastic(s, dist); },
        dsched::SearchSpace::kAllPermutations);
    benchmark::DoNotOptimize(rep.best_value);
  }
}
BENCHMARK(BM_OraclePermutations)->Arg(4)->Arg(5)->Arg(6)->Arg(7);

static void BM_SorterEpisodes(benchmark::State& state) {
  dsched::SorterConfig cfg;
  cfg.episodes = state.range(0);
  const auto comps =
      dsched::build_comparators(dsched::make_network_rules(cfg), cfg.arrival);
  for (auto _ : state) {
    auto stats = dsched::run_episodes(comps.bo, cfg);
    benchmark::DoNotOptimize(stats.mean_utility);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SorterEpisodes)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
