#pragma once

#include <stdexcept>

#include "agency/model.hpp"

namespace agency {

class InfeasibleProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Second-best contract of the standard model: the premium/effort pair a
// principal would pick when effort is unobservable but both parties know the
// noise distribution.
struct SecondBestSolution {
  double a_star = 0;       // optimal incited effort
  double p_star = 0;       // optimal premium
  double x_star = 0;       // expected outcome at the optimum (= a_star)
  double sigma_used = 0;   // noise sd the solution was computed under
  double principal_eu = 0;
  double agent_eu = 0;
};

// E[(1 - e^{-eta p (a + theta)}) / eta] - a^2/2 for theta ~ Normal(0, sigma^2),
// using the exact moment of the lognormal term.
double expected_agent_utility(double effort, double premium, double sigma, double eta);

// argmax over effort in [0, effort_hi] of expected_agent_utility. The
// objective is strictly concave in effort, so a coarse bracket plus
// golden-section search suffices; a fine-grid fallback guards the bracket.
double agent_best_response_expected(double premium, double sigma, double eta,
                                    double effort_hi);

// Upper bound on any best response for premiums in [0,1]; used as the
// solver's effort interval.
double best_response_cap(double sigma, double eta);

// Grid search over the premium with exact incentive compatibility (via best
// response) and the participation constraint, then one golden refinement
// pass. Ties break toward the lower premium.
SecondBestSolution solve_second_best(const ModelParams& params, double sigma);

// Resolves the circular definition sigma = sigma_factor * x*(sigma). The
// fixed-point mode iterates from sigma = 0; the one-shot mode scales the
// sigma = 0 solution once and re-solves under the scaled sigma.
SecondBestSolution calibrate_sigma(const ModelParams& params);

}  // namespace agency
