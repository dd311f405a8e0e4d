#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace agency {

// Thrown when a sharing-rule precondition is violated (premium outside [0,1]).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SigmaCalibration {
  kFixedPoint,  // iterate sigma = factor * x*(sigma) to a fixed point
  kOneShot,     // solve once at sigma = 0, then scale
};

enum class CandidateLaw {
  kUniform,      // i.i.d. uniform on [0, effort_hi]
  kLocalNormal,  // normal around the incumbent, sd = effort_hi / 10, clamped
};

// Exogenous constants of one problem instance.
struct ModelParams {
  double eta = 0.5;                // Arrow-Pratt risk aversion, > 0
  double sigma_factor = 0.05;      // noise sd as fraction of benchmark outcome
  double theta_mean = 0.0;         // environment noise mean (fixed 0)
  double premium_lo = 0.0;
  double premium_hi = 1.0;
  double reservation_utility = 0.0;
  int premium_grid_n = 10001;      // grid points on [premium_lo, premium_hi]
  int candidate_count = 2;         // alternative efforts drawn per period
  SigmaCalibration sigma_calibration = SigmaCalibration::kFixedPoint;
  CandidateLaw candidate_law = CandidateLaw::kUniform;
  double initial_belief = 0.0;     // belief before any estimate is stored
  double effort_tolerance = 0.0;   // incentive-compatibility slack; 0 = effort_hi / 1e4

  void validate() const {
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
    if (!(sigma_factor >= 0.0)) throw std::invalid_argument("sigma_factor must be >= 0");
    if (theta_mean != 0.0) throw std::invalid_argument("theta_mean is fixed at 0");
    if (!(premium_lo >= 0.0 && premium_lo < premium_hi && premium_hi <= 1.0))
      throw std::invalid_argument("premium bounds must satisfy 0 <= lo < hi <= 1");
    if (premium_grid_n < 2) throw std::invalid_argument("premium_grid_n must be >= 2");
    if (candidate_count < 1) throw std::invalid_argument("candidate_count must be >= 1");
  }

  double resolved_effort_tolerance(double effort_hi) const {
    return effort_tolerance > 0.0 ? effort_tolerance : effort_hi * 1e-4;
  }
};

// One period of a simulated relationship.
struct PeriodRecord {
  int t = 0;                  // 1-based period index
  double incited_effort = 0;  // effort the contract was designed for
  double premium = 0;         // share of outcome paid to the agent
  double exerted_effort = 0;  // effort the agent actually chose
  double theta_realized = 0;  // environment draw
  double outcome = 0;         // exerted_effort + theta_realized
  double compensation = 0;    // outcome * premium
  double principal_utility = 0;
  double agent_utility = 0;
  double principal_belief = 0;  // belief the period-t contract was designed under
  double agent_belief = 0;      // belief the agent chose effort under
};

inline double outcome(double effort, double theta) { return effort + theta; }

inline double compensation(double outcome_value, double premium) {
  if (!(premium >= 0.0 && premium <= 1.0))
    throw ContractViolation("premium outside [0,1]: " + std::to_string(premium));
  return outcome_value * premium;
}

// Computed as outcome minus the agent's share so that budget balance
// (principal_utility + compensation == outcome) holds bit-exactly.
inline double principal_utility(double outcome_value, double premium) {
  return outcome_value - compensation(outcome_value, premium);
}

// V(s) - G(a) with exponential pay utility and quadratic effort disutility.
inline double agent_utility(double compensation_value, double effort, double eta) {
  return (1.0 - std::exp(-eta * compensation_value)) / eta - 0.5 * effort * effort;
}

}  // namespace agency
