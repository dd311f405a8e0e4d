#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agency/benchmark.hpp"

namespace agency {

// Raised when a test statistic is undefined for the given samples (too few
// values or no variance to work with).
class DegenerateTest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row-major replications x periods matrix of normalized efforts.
struct EffortMatrix {
  std::size_t replications = 0;
  std::size_t periods = 0;
  std::vector<double> values;  // size replications * periods

  double at(std::size_t r, std::size_t t) const {
    return values[r * periods + t];
  }
  double& at(std::size_t r, std::size_t t) { return values[r * periods + t]; }
  std::vector<double> column(std::size_t t) const;
};

struct TTestResult {
  double t_stat = 0;
  double df = 0;
  double p_value = 1;
  bool reject = false;
};

struct FTestResult {
  double f_stat = 1;
  double df_num = 0;
  double df_den = 0;
  double p_value = 1;
  bool reject = false;
};

enum class TTestMode { kWelch, kPaired };

// I_x(a, b) via the symmetric continued-fraction expansion; relative error
// well below 1e-10 over the arguments used here.
double regularized_incomplete_beta(double x, double a, double b);
double student_t_cdf(double t, double df);
double f_distribution_cdf(double f, double df_num, double df_den);

double sample_mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);  // n-1 denominator
double sample_sd(std::span<const double> xs);

// Column means of the normalized-effort matrix (the per-period performance
// measure).
std::vector<double> performance_series(const EffortMatrix& m);

// Standard deviation of the flattened matrix.
double pooled_sd(const EffortMatrix& m);
// Alternative dispersion reading: per-period standard deviations, averaged.
double mean_per_period_sd(const EffortMatrix& m);

// Two-sample unequal-variance t test with Welch-Satterthwaite degrees of
// freedom; two-sided p value.
TTestResult welch_t_test(std::span<const double> sample_a,
                         std::span<const double> sample_b, double alpha);

// Paired-sample variant (sensitivity mode for consecutive-period columns,
// which really do come from the same replications).
TTestResult paired_t_test(std::span<const double> sample_a,
                          std::span<const double> sample_b, double alpha);

// Two-sided variance-ratio test, larger variance on top.
FTestResult f_test_variance(std::span<const double> sample_a,
                            std::span<const double> sample_b, double alpha);

// Earliest period t such that no consecutive-column test at t..T rejects;
// nullopt when the final test still rejects.
std::optional<int> stability_onset(const EffortMatrix& m, double alpha,
                                   TTestMode mode = TTestMode::kWelch);

// Scenario-level summary produced by the engine's batch runner.
struct ScenarioResult {
  std::string label;
  EffortMatrix normalized_efforts;
  std::vector<double> phi;
  std::vector<double> per_period_sd;
  double pooled_sd = 0;
  std::optional<int> stability_period;  // nullopt: none found (or R < 2)
  SecondBestSolution benchmark;
};

struct ComparisonReport {
  std::string label_a;
  std::string label_b;
  double final_phi_a = 0;
  double final_phi_b = 0;
  double final_diff = 0;
  TTestResult final_welch;
  FTestResult pooled_f;
  double pooled_sd_a = 0;
  double pooled_sd_b = 0;
  std::optional<int> onset_a;
  std::optional<int> onset_b;
};

// Final-period mean comparison, pooled-dispersion F test, and both stability
// onsets for two scenarios of equal shape.
ComparisonReport compare_scenarios(const ScenarioResult& a,
                                   const ScenarioResult& b, double alpha);

}  // namespace agency
