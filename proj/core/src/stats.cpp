#include "agency/stats.hpp"

#include <algorithm>
#include <cmath>

namespace agency {
namespace {

// Continued fraction for the incomplete beta function, modified Lentz with
// the even/odd term pair applied per iteration.
double incomplete_beta_cf(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 3e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return h;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

void require_sample(std::span<const double> xs, const char* which) {
  if (xs.size() < 2)
    throw DegenerateTest(std::string(which) + " needs at least 2 values");
}

}  // namespace

std::vector<double> EffortMatrix::column(std::size_t t) const {
  std::vector<double> out(replications);
  for (std::size_t r = 0; r < replications; ++r) out[r] = at(r, t);
  return out;
}

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0) || std::isnan(x)) return std::nan("");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * incomplete_beta_cf(x, a, b) / a;
  return 1.0 - front * incomplete_beta_cf(1.0 - x, b, a) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) return std::nan("");
  const double tail = 0.5 * regularized_incomplete_beta(df / (t * t + df), 0.5 * df, 0.5);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double f_distribution_cdf(double f, double df_num, double df_den) {
  if (!(df_num > 0.0 && df_den > 0.0)) return std::nan("");
  if (f <= 0.0) return 0.0;
  const double x = df_num * f / (df_num * f + df_den);
  return regularized_incomplete_beta(x, 0.5 * df_num, 0.5 * df_den);
}

double sample_mean(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  const double m = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double sample_sd(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs));
}

std::vector<double> performance_series(const EffortMatrix& m) {
  std::vector<double> phi(m.periods, 0.0);
  for (std::size_t t = 0; t < m.periods; ++t) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.replications; ++r) sum += m.at(r, t);
    phi[t] = sum / static_cast<double>(m.replications);
  }
  return phi;
}

double pooled_sd(const EffortMatrix& m) { return sample_sd(m.values); }

double mean_per_period_sd(const EffortMatrix& m) {
  double sum = 0.0;
  for (std::size_t t = 0; t < m.periods; ++t) sum += sample_sd(m.column(t));
  return sum / static_cast<double>(m.periods);
}

TTestResult welch_t_test(std::span<const double> sample_a,
                         std::span<const double> sample_b, double alpha) {
  require_sample(sample_a, "welch_t_test sample_a");
  require_sample(sample_b, "welch_t_test sample_b");
  const double n1 = static_cast<double>(sample_a.size());
  const double n2 = static_cast<double>(sample_b.size());
  const double v1 = sample_variance(sample_a);
  const double v2 = sample_variance(sample_b);
  if (v1 == 0.0 && v2 == 0.0)
    throw DegenerateTest("welch_t_test: both samples have zero variance");

  const double se1 = v1 / n1;
  const double se2 = v2 / n2;
  TTestResult res;
  res.t_stat = (sample_mean(sample_a) - sample_mean(sample_b)) / std::sqrt(se1 + se2);
  res.df = (se1 + se2) * (se1 + se2) /
           (se1 * se1 / (n1 - 1.0) + se2 * se2 / (n2 - 1.0));
  res.p_value = regularized_incomplete_beta(
      res.df / (res.t_stat * res.t_stat + res.df), 0.5 * res.df, 0.5);
  res.reject = res.p_value < alpha;
  return res;
}

TTestResult paired_t_test(std::span<const double> sample_a,
                          std::span<const double> sample_b, double alpha) {
  require_sample(sample_a, "paired_t_test sample_a");
  if (sample_a.size() != sample_b.size())
    throw std::invalid_argument("paired_t_test: samples must have equal length");
  std::vector<double> diff(sample_a.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sample_a[i] - sample_b[i];
  const double vd = sample_variance(diff);
  if (vd == 0.0)
    throw DegenerateTest("paired_t_test: differences have zero variance");
  const double n = static_cast<double>(diff.size());
  TTestResult res;
  res.t_stat = sample_mean(diff) / std::sqrt(vd / n);
  res.df = n - 1.0;
  res.p_value = regularized_incomplete_beta(
      res.df / (res.t_stat * res.t_stat + res.df), 0.5 * res.df, 0.5);
  res.reject = res.p_value < alpha;
  return res;
}

FTestResult f_test_variance(std::span<const double> sample_a,
                            std::span<const double> sample_b, double alpha) {
  require_sample(sample_a, "f_test_variance sample_a");
  require_sample(sample_b, "f_test_variance sample_b");
  const double v1 = sample_variance(sample_a);
  const double v2 = sample_variance(sample_b);
  if (v1 == 0.0 || v2 == 0.0)
    throw DegenerateTest("f_test_variance: a sample has zero variance");

  FTestResult res;
  if (v1 >= v2) {
    res.f_stat = v1 / v2;
    res.df_num = static_cast<double>(sample_a.size()) - 1.0;
    res.df_den = static_cast<double>(sample_b.size()) - 1.0;
  } else {
    res.f_stat = v2 / v1;
    res.df_num = static_cast<double>(sample_b.size()) - 1.0;
    res.df_den = static_cast<double>(sample_a.size()) - 1.0;
  }
  const double cdf = f_distribution_cdf(res.f_stat, res.df_num, res.df_den);
  res.p_value = std::min(1.0, 2.0 * std::min(cdf, 1.0 - cdf));
  res.reject = res.p_value < alpha;
  return res;
}

std::optional<int> stability_onset(const EffortMatrix& m, double alpha,
                                   TTestMode mode) {
  if (m.periods < 2)
    throw std::invalid_argument("stability_onset needs at least 2 periods");
  int last_reject = 0;
  std::vector<double> prev = m.column(0);
  for (std::size_t t = 1; t < m.periods; ++t) {
    std::vector<double> cur = m.column(t);
    const TTestResult res = (mode == TTestMode::kWelch)
                                ? welch_t_test(cur, prev, alpha)
                                : paired_t_test(cur, prev, alpha);
    if (res.reject) last_reject = static_cast<int>(t) + 1;  // 1-based period
    prev = std::move(cur);
  }
  if (last_reject == static_cast<int>(m.periods)) return std::nullopt;
  if (last_reject == 0) return 2;
  return last_reject + 1;
}

ComparisonReport compare_scenarios(const ScenarioResult& a,
                                   const ScenarioResult& b, double alpha) {
  if (a.normalized_efforts.replications != b.normalized_efforts.replications ||
      a.normalized_efforts.periods != b.normalized_efforts.periods)
    throw std::invalid_argument("compare_scenarios: shapes differ");

  ComparisonReport rep;
  rep.label_a = a.label;
  rep.label_b = b.label;
  rep.final_phi_a = a.phi.back();
  rep.final_phi_b = b.phi.back();
  rep.final_diff = rep.final_phi_a - rep.final_phi_b;
  const auto col_a = a.normalized_efforts.column(a.normalized_efforts.periods - 1);
  const auto col_b = b.normalized_efforts.column(b.normalized_efforts.periods - 1);
  rep.final_welch = welch_t_test(col_a, col_b, alpha);
  rep.pooled_f = f_test_variance(a.normalized_efforts.values,
                                 b.normalized_efforts.values, alpha);
  rep.pooled_sd_a = a.pooled_sd;
  rep.pooled_sd_b = b.pooled_sd;
  rep.onset_a = a.stability_period;
  rep.onset_b = b.stability_period;
  return rep;
}

}  // namespace agency
