#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "qlopt/enumerator.hpp"
#include "qlopt/gain_state.hpp"
#include "qlopt/instance_io.hpp"
#include "qlopt/oracle.hpp"
#include "qlopt/tabu.hpp"

namespace {

qlopt::QuboInstance make(std::size_t n, std::size_t m, std::uint64_t seed = 1) {
  qlopt::GeneratorConfig config;
  config.n = n;
  config.pair_count = m;
  config.seed = seed;
  return qlopt::generate_instance(config);
}

void BM_ApplyFlip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = make(n, 10 * n);
  qlopt::GainState gs(q, qlopt::BitVector(n, 0));
  std::mt19937_64 rng(7);
  for (auto _ : state) {
    gs.apply_flip(rng() % n);
    benchmark::DoNotOptimize(gs.objective());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ApplyFlip)->Arg(100)->Arg(1000)->Arg(2500);

void BM_GreedySampler(benchmark::State& state) {
  const auto q = make(100, 500);
  for (auto _ : state) {
    auto r = qlopt::sample_greedy_restarts(q, qlopt::Budget::of_iterations(10000), 500, 1);
    benchmark::DoNotOptimize(r.descents);
  }
}
BENCHMARK(BM_GreedySampler)->Unit(benchmark::kMillisecond);

void BM_Enumerator(benchmark::State& state) {
  const auto q = make(100, 500);
  qlopt::EnumerationConfig config;
  config.budget = qlopt::Budget::of_iterations(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    auto r = qlopt::enumerate_local_optima(q, config);
    benchmark::DoNotOptimize(r.stats.solutions_found);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Enumerator)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_EnumerateExhaustive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = make(n, n * (n - 1) / 4);
  qlopt::EnumerationConfig config;
  config.top_k = std::size_t{1} << n;
  for (auto _ : state) benchmark::DoNotOptimize(qlopt::enumerate_local_optima(q, config).solutions.size());
}
BENCHMARK(BM_EnumerateExhaustive)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = make(n, n * (n - 1) / 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qlopt::brute_force_local_optima(q, qlopt::Optimality::NonStrict).size());
  }
}
BENCHMARK(BM_Oracle)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Tabu(benchmark::State& state) {
  const auto q = make(250, 3000);
  const auto sample = qlopt::sample_greedy_restarts(q, qlopt::Budget::of_iterations(5000), 10, 1);
  const auto elite = qlopt::EliteSet::from(sample.solutions, 10);
  for (auto _ : state) {
    auto r = qlopt::tabu_search(q, elite, qlopt::Budget::of_iterations(10000), {});
    benchmark::DoNotOptimize(r.best.objective);
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Tabu)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
