#include "agency/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "agency/optimize.hpp"

namespace agency {
namespace {

// Coarse sample the objective and report whether the samples dip and rise
// again, which would contradict unimodality.
template <typename F>
bool coarse_samples_unimodal(F&& f, double lo, double hi, int n) {
  double prev = f(lo);
  bool falling = false;
  const double h = (hi - lo) / (n - 1);
  for (int i = 1; i < n; ++i) {
    const double v = f(lo + h * i);
    const double scale = std::max({1.0, std::fabs(v), std::fabs(prev)});
    if (v > prev + 1e-12 * scale && falling) return false;
    if (v < prev - 1e-12 * scale) falling = true;
    prev = v;
  }
  return true;
}

template <typename F>
double fine_grid_argmax(F&& f, double lo, double hi, int n) {
  double best_x = lo;
  double best_f = f(lo);
  const double h = (hi - lo) / (n - 1);
  for (int i = 1; i < n; ++i) {
    const double x = (i + 1 == n) ? hi : lo + h * i;
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

double expected_agent_utility(double effort, double premium, double sigma,
                              double eta) {
  const double exponent =
      -eta * premium * effort + 0.5 * eta * eta * premium * premium * sigma * sigma;
  return (1.0 - std::exp(exponent)) / eta - 0.5 * effort * effort;
}

double best_response_cap(double sigma, double eta) {
  return std::exp(0.5 * eta * eta * sigma * sigma) + 1.0;
}

double agent_best_response_expected(double premium, double sigma, double eta,
                                    double effort_hi) {
  if (premium <= 0.0 || effort_hi <= 0.0) return 0.0;
  auto objective = [=](double a) {
    return expected_agent_utility(a, premium, sigma, eta);
  };
  if (!coarse_samples_unimodal(objective, 0.0, effort_hi, 33))
    return fine_grid_argmax(objective, 0.0, effort_hi, 1 << 17);
  return maximize_unimodal(objective, 0.0, effort_hi,
                           std::max(1e-12, effort_hi * 1e-11));
}

SecondBestSolution solve_second_best(const ModelParams& params, double sigma) {
  params.validate();
  const double eta = params.eta;
  const double cap = best_response_cap(sigma, eta);
  const double participation_slack = 1e-12;

  const int n = params.premium_grid_n;
  const double lo = params.premium_lo;
  const double hi = params.premium_hi;
  const double h = (hi - lo) / (n - 1);

  auto feasible_eu = [&](double p, double& a_out) {
    a_out = agent_best_response_expected(p, sigma, eta, cap);
    if (expected_agent_utility(a_out, p, sigma, eta) <
        params.reservation_utility - participation_slack)
      return false;
    return true;
  };

  bool found = false;
  double best_p = 0, best_a = 0, best_eu = 0;
  for (int i = 0; i < n; ++i) {
    const double p = (i + 1 == n) ? hi : lo + h * i;
    double a;
    if (!feasible_eu(p, a)) continue;
    const double eu = (1.0 - p) * a;
    if (!found || eu > best_eu) {  // strict: lowest premium wins ties
      found = true;
      best_p = p;
      best_a = a;
      best_eu = eu;
    }
  }
  if (!found)
    throw InfeasibleProblem(
        "no premium satisfies the participation constraint at Ubar = " +
        std::to_string(params.reservation_utility));

  // One golden refinement pass inside the winning cell's neighborhood; the
  // refined point is kept only on a strict improvement that stays feasible.
  const double rlo = std::max(lo, best_p - h);
  const double rhi = std::min(hi, best_p + h);
  const double refined = maximize_unimodal(
      [&](double p) {
        const double a = agent_best_response_expected(p, sigma, eta, cap);
        return (1.0 - p) * a;
      },
      rlo, rhi, 1e-12);
  double refined_a;
  if (feasible_eu(refined, refined_a)) {
    const double refined_eu = (1.0 - refined) * refined_a;
    if (refined_eu > best_eu) {
      best_p = refined;
      best_a = refined_a;
      best_eu = refined_eu;
    }
  }

  SecondBestSolution sol;
  sol.a_star = best_a;
  sol.p_star = best_p;
  sol.x_star = best_a;  // theta_mean fixed at zero
  sol.sigma_used = sigma;
  sol.principal_eu = best_eu;
  sol.agent_eu = expected_agent_utility(best_a, best_p, sigma, eta);
  return sol;
}

SecondBestSolution calibrate_sigma(const ModelParams& params) {
  params.validate();
  if (params.sigma_calibration == SigmaCalibration::kOneShot) {
    const SecondBestSolution base = solve_second_best(params, 0.0);
    return solve_second_best(params, params.sigma_factor * base.x_star);
  }

  double sigma = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const SecondBestSolution sol = solve_second_best(params, sigma);
    const double next = params.sigma_factor * sol.x_star;
    if (!std::isfinite(next) || next > 1e6) {
      std::ostringstream msg;
      msg << "sigma calibration diverges (x* grows with sigma); iterates " << sigma
          << " -> " << next;
      throw CalibrationError(msg.str());
    }
    if (std::fabs(next - sigma) < 1e-6) return solve_second_best(params, next);
    sigma = next;
  }
  const SecondBestSolution last = solve_second_best(params, sigma);
  std::ostringstream msg;
  msg << "sigma calibration did not converge in 100 iterations; last iterates "
      << sigma << " -> " << params.sigma_factor * last.x_star;
  throw CalibrationError(msg.str());
}

}  // namespace agency
