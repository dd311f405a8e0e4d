#include "agency/engine.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "agency/actors.hpp"
#include "agency/learning.hpp"
#include "agency/rng.hpp"

namespace agency {
namespace {

BoundedMemory make_memory(const std::optional<std::size_t>& capacity,
                          double initial_belief) {
  return capacity ? BoundedMemory::bounded(*capacity, initial_belief)
                  : BoundedMemory::unbounded(initial_belief);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace

RunTrace run_episode(const SimulationConfig& config,
                     const SecondBestSolution& benchmark, std::uint64_t seed) {
  const ModelParams& mp = config.params;
  const double effort_hi = benchmark.a_star;
  const double sigma = benchmark.sigma_used;
  Rng rng(seed);

  BoundedMemory principal_memory = make_memory(config.memory_principal, mp.initial_belief);
  BoundedMemory agent_memory = make_memory(config.memory_agent, mp.initial_belief);

  double initial_effort = 0.0;
  switch (config.initial_effort_rule) {
    case InitialEffortRule::kUniformRandom:
      initial_effort = rng.uniform(0.0, effort_hi);
      break;
    case InitialEffortRule::kZero:
      initial_effort = 0.0;
      break;
    case InitialEffortRule::kMidpoint:
      initial_effort = 0.5 * effort_hi;
      break;
  }

  double principal_belief = principal_memory.belief();
  const auto initial_premium =
      principal_premium_for(initial_effort, principal_belief, mp, effort_hi);
  if (!initial_premium)
    throw InfeasibleProblem("no feasible premium for the initial contract");
  ContractOffer offer{initial_effort, *initial_premium};

  RunTrace trace;
  trace.seed = seed;
  trace.benchmark = benchmark;
  trace.periods.reserve(config.periods);

  for (int t = 1; t <= config.periods; ++t) {
    const double agent_belief = agent_memory.belief();
    const double effort =
        agent_choose_effort(offer.premium, agent_belief, mp.eta, effort_hi);
    const double theta = mp.theta_mean + sigma * rng.normal();
    const double realized = outcome(effort, theta);
    const double pay = compensation(realized, offer.premium);

    PeriodRecord rec;
    rec.t = t;
    rec.incited_effort = offer.incited_effort;
    rec.premium = offer.premium;
    rec.exerted_effort = effort;
    rec.theta_realized = theta;
    rec.outcome = realized;
    rec.compensation = pay;
    rec.principal_utility = principal_utility(realized, offer.premium);
    rec.agent_utility = agent_utility(pay, effort, mp.eta);
    rec.principal_belief = principal_belief;
    rec.agent_belief = agent_belief;
    trace.periods.push_back(rec);

    principal_memory.push(infer_theta_principal(realized, offer.incited_effort));
    agent_memory.push(infer_theta_agent(realized, effort));

    // The next-period contract is designed under the belief that includes
    // this period's estimate; that belief is what period t+1 records.
    principal_belief = principal_memory.belief();
    offer = principal_search_step(offer, principal_belief, mp, effort_hi, rng);
  }
  return trace;
}

BatchRun run_batch_with(const SimulationConfig& config,
                        const SecondBestSolution& benchmark, int threads,
                        bool keep_traces) {
  config.validate();
  if (!(benchmark.a_star > 0.0))
    throw InfeasibleProblem("benchmark effort is zero; cannot normalize performance");

  const std::size_t reps = static_cast<std::size_t>(config.replications);
  std::vector<RunTrace> traces(reps);

  const int n_threads = std::min<int>(resolve_threads(threads), config.replications);
  if (n_threads <= 1) {
    for (std::size_t r = 0; r < reps; ++r)
      traces[r] = run_episode(config, benchmark, derive_seed(config.master_seed, r));
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t r = next.fetch_add(1);
        if (r >= reps) return;
        try {
          traces[r] = run_episode(config, benchmark, derive_seed(config.master_seed, r));
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  EffortMatrix matrix;
  matrix.replications = reps;
  matrix.periods = static_cast<std::size_t>(config.periods);
  matrix.values.resize(reps * matrix.periods);
  for (std::size_t r = 0; r < reps; ++r)
    for (std::size_t t = 0; t < matrix.periods; ++t)
      matrix.at(r, t) = traces[r].periods[t].exerted_effort / benchmark.a_star;

  ScenarioResult result;
  result.label = config.label;
  result.phi = performance_series(matrix);
  result.per_period_sd.resize(matrix.periods);
  for (std::size_t t = 0; t < matrix.periods; ++t)
    result.per_period_sd[t] = reps >= 2 ? sample_sd(matrix.column(t)) : 0.0;
  result.pooled_sd = reps * matrix.periods >= 2 ? sample_sd(matrix.values) : 0.0;
  if (reps >= 2 && matrix.periods >= 2)
    result.stability_period = stability_onset(matrix, config.alpha, config.ttest_mode);
  result.benchmark = benchmark;
  result.normalized_efforts = std::move(matrix);

  BatchRun batch;
  batch.result = std::move(result);
  if (keep_traces) batch.traces = std::move(traces);
  return batch;
}

ScenarioResult run_batch(const SimulationConfig& config, int threads) {
  const SecondBestSolution benchmark = calibrate_sigma(config.params);
  return run_batch_with(config, benchmark, threads).result;
}

}  // namespace agency
