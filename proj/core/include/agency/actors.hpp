#pragma once

#include <optional>
#include <span>

#include "agency/model.hpp"
#include "agency/rng.hpp"

namespace agency {

// Next-period contract: the premium is communicated to the agent, the effort
// it was designed for stays private to the principal.
struct ContractOffer {
  double incited_effort = 0;
  double premium = 0;
};

// The agent's certainty-equivalent objective: his utility with the unknown
// environment replaced by his current belief.
inline double certainty_equivalent_utility(double effort, double premium,
                                           double belief, double eta) {
  return agent_utility(compensation(effort + belief, premium), effort, eta);
}

// argmax over effort in [0, effort_hi] of the certainty-equivalent utility.
// Deterministic; ties break toward the smaller effort.
double agent_choose_effort(double premium, double agent_belief, double eta,
                           double effort_hi);

// Smallest grid premium that (from the principal's viewpoint, using her own
// belief as a stand-in for the agent's) both incites at least the candidate
// effort and leaves the agent his reservation utility. nullopt when no grid
// premium does; the caller discards such candidates.
std::optional<double> principal_premium_for(double candidate_effort,
                                            double principal_belief,
                                            const ModelParams& params,
                                            double effort_hi);

// Picks the best-scoring feasible candidate effort. Scoring is the
// principal's expected utility (1 - p) * (candidate + belief) with p from
// principal_premium_for. Ties prefer the incumbent, then the lower effort;
// the rule depends on values only, never on list position. nullopt when
// every candidate is infeasible.
std::optional<ContractOffer> select_offer(double incumbent_effort,
                                          std::span<const double> candidates,
                                          double principal_belief,
                                          const ModelParams& params,
                                          double effort_hi);

// One hill-climbing step: draw candidate_count alternative efforts, score
// them against the incumbent, return the winner. When nothing is feasible
// the incumbent offer is retained unchanged (stall).
ContractOffer principal_search_step(const ContractOffer& current,
                                    double principal_belief,
                                    const ModelParams& params,
                                    double effort_hi, Rng& rng);

}  // namespace agency
