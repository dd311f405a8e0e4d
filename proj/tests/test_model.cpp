#include <cmath>

#include <doctest.h>

#include "agency/model.hpp"

using namespace agency;

TEST_CASE("outcome is the plain sum of effort and noise") {
  CHECK(outcome(0.5, 0.1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(outcome(0.37, 0.0) == 0.37);
  CHECK(outcome(0.0, -0.25) == -0.25);
}

TEST_CASE("compensation is the premium share of outcome") {
  CHECK(compensation(1.0, 0.25) == 0.25);
  CHECK(compensation(3.7, 0.0) == 0.0);
  CHECK(compensation(3.7, 1.0) == 3.7);
  CHECK(compensation(-0.4, 0.5) == -0.2);  // no floor at zero
  CHECK_THROWS_AS(compensation(1.0, 1.5), ContractViolation);
  CHECK_THROWS_AS(compensation(1.0, -0.1), ContractViolation);
}

TEST_CASE("principal keeps the complement of the agent's share") {
  CHECK(principal_utility(1.0, 0.25) == 0.75);
  CHECK(principal_utility(0.0, 0.7) == 0.0);
  CHECK(principal_utility(2.0, 1.0) == 0.0);
}

TEST_CASE("budget balance holds to rounding error") {
  for (double x : {-2.0, -0.3, 0.0, 0.17, 1.0, 123.456}) {
    for (double p : {0.0, 0.1, 0.25, 0.5, 0.99, 1.0}) {
      const double total = principal_utility(x, p) + compensation(x, p);
      CHECK(std::fabs(total - x) <= 2e-16 * std::max(1.0, std::fabs(x)));
    }
  }
}

TEST_CASE("agent utility evaluates V(s) - G(a)") {
  CHECK(agent_utility(0.0, 0.0, 0.5) == 0.0);
  for (double s : {0.1, 0.5, 2.0}) {
    const double eta = 0.7;
    CHECK(agent_utility(s, 0.0, eta) ==
          doctest::Approx((1.0 - std::exp(-eta * s)) / eta).epsilon(1e-15));
  }
  // (1 - e^{-0.5})/0.5 - 0.5, cross-checked against a high-precision evaluator
  CHECK(agent_utility(1.0, 1.0, 0.5) ==
        doctest::Approx(0.2869386805747332).epsilon(1e-13));
}

TEST_CASE("agent utility shape: monotone in pay, decreasing in effort, concave") {
  const double eta = 0.5;
  const double h = 1e-3;
  for (int i = -20; i <= 20; ++i) {
    const double s = 0.15 * i;
    // increasing in compensation
    CHECK(agent_utility(s + h, 0.3, eta) > agent_utility(s, 0.3, eta));
    // concave in compensation: second difference below zero
    const double second = agent_utility(s + h, 0.3, eta) -
                          2.0 * agent_utility(s, 0.3, eta) +
                          agent_utility(s - h, 0.3, eta);
    CHECK(second <= 0.0);
  }
  for (int i = 1; i <= 20; ++i) {
    const double a = 0.05 * i;
    CHECK(agent_utility(0.4, a + h, eta) < agent_utility(0.4, a, eta));
  }
}

TEST_CASE("operations are pure: repeated calls bit-identical") {
  CHECK(agent_utility(0.73, 0.21, 0.5) == agent_utility(0.73, 0.21, 0.5));
  CHECK(compensation(0.6180339887, 0.3141592653) ==
        compensation(0.6180339887, 0.3141592653));
}

TEST_CASE("parameter validation rejects broken instances") {
  ModelParams p;
  p.eta = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.premium_lo = 0.5;
  p.premium_hi = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.candidate_count = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.theta_mean = 0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_NOTHROW(ModelParams{}.validate());
}
