#include <benchmark/benchmark.h>

#include "agency/actors.hpp"
#include "agency/benchmark.hpp"
#include "agency/engine.hpp"
#include "agency/rng.hpp"
#include "agency/stats.hpp"

namespace {

void BM_AgentChooseEffort(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(agency::agent_choose_effort(0.45, 0.01, 0.5, 0.41));
  }
}
BENCHMARK(BM_AgentChooseEffort);

void BM_PremiumFor(benchmark::State& state) {
  agency::ModelParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(agency::principal_premium_for(0.35, 0.02, params, 0.41));
  }
}
BENCHMARK(BM_PremiumFor);

void BM_SolveSecondBest(benchmark::State& state) {
  agency::ModelParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(agency::solve_second_best(params, 0.02));
  }
}
BENCHMARK(BM_SolveSecondBest);

void BM_CalibrateSigma(benchmark::State& state) {
  agency::ModelParams params;
  params.sigma_factor = 0.45;
  for (auto _ : state) {
    benchmark::DoNotOptimize(agency::calibrate_sigma(params));
  }
}
BENCHMARK(BM_CalibrateSigma);

void BM_Episode(benchmark::State& state) {
  agency::SimulationConfig config;
  config.params.sigma_factor = 0.45;
  config.memory_principal = 1;
  const agency::SecondBestSolution bench = agency::calibrate_sigma(config.params);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(agency::run_episode(config, bench, ++seed));
  }
}
BENCHMARK(BM_Episode);

// The full-scale experiment: 700 replications of 20 periods.
void BM_FullScaleBatch(benchmark::State& state) {
  agency::SimulationConfig config;
  config.params.sigma_factor = 0.45;
  config.memory_principal = 1;
  const agency::SecondBestSolution bench = agency::calibrate_sigma(config.params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        agency::run_batch_with(config, bench, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_FullScaleBatch)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_WelchTTest(benchmark::State& state) {
  agency::Rng rng(5);
  std::vector<double> a(700), b(700);
  for (auto& v : a) v = rng.normal(0.9, 0.05);
  for (auto& v : b) v = rng.normal(0.92, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(agency::welch_t_test(a, b, 0.01));
  }
}
BENCHMARK(BM_WelchTTest);

}  // namespace

BENCHMARK_MAIN();
