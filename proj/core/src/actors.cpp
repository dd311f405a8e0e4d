#include "agency/actors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "agency/optimize.hpp"

namespace agency {
namespace {

constexpr double kParticipationSlack = 1e-12;

// It is the first-order margin of the certainty-equivalent objective at
// effort c: positive means the agent's best response to premium p is at
// least c. Valid because the objective is strictly concave in effort.
double incentive_margin(double c, double p, double belief, double eta) {
  return p * std::exp(-eta * p * (c + belief)) - c;
}

bool participation_holds(double p, double belief, const ModelParams& params,
                         double effort_hi) {
  const double a = agent_choose_effort(p, belief, params.eta, effort_hi);
  return certainty_equivalent_utility(a, p, belief, params.eta) >=
         params.reservation_utility - kParticipationSlack;
}

struct PremiumGrid {
  double lo, h;
  int n;
  double at(int i) const { return (i + 1 == n) ? lo + h * (n - 1) : lo + h * i; }
};

}  // namespace

double agent_choose_effort(double premium, double agent_belief, double eta,
                           double effort_hi) {
  if (!(premium >= 0.0 && premium <= 1.0))
    throw ContractViolation("premium outside [0,1]: " + std::to_string(premium));
  if (premium == 0.0 || effort_hi <= 0.0) return 0.0;
  return maximize_unimodal(
      [=](double a) {
        return certainty_equivalent_utility(a, premium, agent_belief, eta);
      },
      0.0, effort_hi, std::max(1e-12, effort_hi * 1e-11));
}

std::optional<double> principal_premium_for(double candidate_effort,
                                            double principal_belief,
                                            const ModelParams& params,
                                            double effort_hi) {
  const double eta = params.eta;
  const double tol = params.resolved_effort_tolerance(effort_hi);
  const double target = candidate_effort - tol;
  const PremiumGrid grid{params.premium_lo,
                         (params.premium_hi - params.premium_lo) /
                             (params.premium_grid_n - 1),
                         params.premium_grid_n};

  // Index of the smallest grid premium whose induced best response reaches
  // the target effort. The margin g(p) rises up to p = 1/(eta*(target+belief))
  // and falls beyond it, so the first crossing is found by bisection on the
  // rising stretch.
  int first_incited = 0;
  if (target > 0.0) {
    auto g = [&](double p) { return incentive_margin(target, p, principal_belief, eta); };
    const double k = eta * (target + principal_belief);
    const double hi_p = grid.at(grid.n - 1);
    double peak = hi_p;
    if (k > 0.0) peak = std::clamp(1.0 / k, grid.lo, hi_p);
    if (g(peak) < 0.0) return std::nullopt;
    if (g(grid.lo) >= 0.0) {
      first_incited = 0;
    } else {
      const double p1 = bisect_root(g, grid.lo, peak);
      int i = static_cast<int>(std::ceil((p1 - grid.lo) / grid.h - 1e-9));
      i = std::max(i, 0);
      while (i < grid.n && g(grid.at(i)) < 0.0) ++i;
      if (i >= grid.n) return std::nullopt;
      first_incited = i;
    }
  }

  if (participation_holds(grid.at(first_incited), principal_belief, params, effort_hi))
    return grid.at(first_incited);

  // Participation can fail at the minimal incentivizing premium when the
  // principal's belief is pessimistic; it recovers monotonically as the
  // premium grows, so bisect for the first grid index where it holds again.
  if (!participation_holds(grid.at(grid.n - 1), principal_belief, params, effort_hi))
    return std::nullopt;
  int lo_i = first_incited;  // participation false here
  int hi_i = grid.n - 1;     // participation true here
  while (hi_i - lo_i > 1) {
    const int mid = lo_i + (hi_i - lo_i) / 2;
    if (participation_holds(grid.at(mid), principal_belief, params, effort_hi))
      hi_i = mid;
    else
      lo_i = mid;
  }
  // In exotic regimes the incentive margin can have dropped below zero again
  // by the time participation recovers; then no grid premium satisfies both.
  if (target > 0.0 &&
      incentive_margin(target, grid.at(hi_i), principal_belief, eta) < 0.0)
    return std::nullopt;
  return grid.at(hi_i);
}

std::optional<ContractOffer> select_offer(double incumbent_effort,
                                          std::span<const double> candidates,
                                          double principal_belief,
                                          const ModelParams& params,
                                          double effort_hi) {
  struct Scored {
    ContractOffer offer;
    double eu;
    bool is_incumbent;
  };
  std::optional<Scored> best;

  auto consider = [&](double effort, bool is_incumbent) {
    const auto premium =
        principal_premium_for(effort, principal_belief, params, effort_hi);
    if (!premium) return;
    const double eu = (1.0 - *premium) * (effort + principal_belief);
    const Scored scored{{effort, *premium}, eu, is_incumbent};
    if (!best) {
      best = scored;
      return;
    }
    if (eu > best->eu) {
      best = scored;
    } else if (eu == best->eu && !best->is_incumbent &&
               (is_incumbent || effort < best->offer.incited_effort)) {
      best = scored;
    }
  };

  consider(incumbent_effort, true);
  for (double c : candidates) consider(c, false);
  if (!best) return std::nullopt;
  return best->offer;
}

ContractOffer principal_search_step(const ContractOffer& current,
                                    double principal_belief,
                                    const ModelParams& params,
                                    double effort_hi, Rng& rng) {
  std::vector<double> candidates;
  candidates.reserve(params.candidate_count);
  for (int i = 0; i < params.candidate_count; ++i) {
    switch (params.candidate_law) {
      case CandidateLaw::kUniform:
        candidates.push_back(rng.uniform(0.0, effort_hi));
        break;
      case CandidateLaw::kLocalNormal:
        candidates.push_back(std::clamp(
            rng.normal(current.incited_effort, effort_hi / 10.0), 0.0, effort_hi));
        break;
    }
  }
  const auto chosen = select_offer(current.incited_effort, candidates,
                                   principal_belief, params, effort_hi);
  return chosen ? *chosen : current;  // stall: keep the incumbent contract
}

}  // namespace agency
