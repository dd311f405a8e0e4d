#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agency/benchmark.hpp"
#include "agency/model.hpp"
#include "agency/stats.hpp"

namespace agency {

enum class InitialEffortRule { kUniformRandom, kZero, kMidpoint };

// Everything one batch of replications depends on.
struct SimulationConfig {
  ModelParams params;
  int periods = 20;        // T
  int replications = 700;  // R
  std::optional<std::size_t> memory_principal;  // nullopt = unlimited
  std::optional<std::size_t> memory_agent;      // nullopt = unlimited
  std::uint64_t master_seed = 42;
  InitialEffortRule initial_effort_rule = InitialEffortRule::kUniformRandom;
  double alpha = 0.01;  // significance level for the stability analysis
  TTestMode ttest_mode = TTestMode::kWelch;
  std::string label = "custom";

  void validate() const {
    params.validate();
    if (periods < 1) throw std::invalid_argument("periods must be >= 1");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  }
};

// One replication's full history.
struct RunTrace {
  std::uint64_t seed = 0;
  SecondBestSolution benchmark;
  std::vector<PeriodRecord> periods;
};

// Plays out one relationship for config.periods steps: offer, effort,
// outcome, pay, inference, memory update, search. The benchmark must have
// been produced by calibrate_sigma(config.params).
RunTrace run_episode(const SimulationConfig& config,
                     const SecondBestSolution& benchmark, std::uint64_t seed);

struct BatchRun {
  ScenarioResult result;
  std::vector<RunTrace> traces;  // filled only when requested
};

// Runs config.replications independent episodes with seeds derived from
// (master_seed, r) and reduces them into a ScenarioResult. The reduction is
// slot-indexed, so the result is bit-identical for any thread count.
// threads = 0 picks hardware concurrency.
BatchRun run_batch_with(const SimulationConfig& config,
                        const SecondBestSolution& benchmark, int threads = 0,
                        bool keep_traces = false);

// Calibrates sigma, then runs the batch.
ScenarioResult run_batch(const SimulationConfig& config, int threads = 0);

}  // namespace agency
