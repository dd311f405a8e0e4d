#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <doctest.h>

#include "agency/rng.hpp"
#include "agency/stats.hpp"
#include "stat_fixtures.hpp"

using namespace agency;

namespace {

EffortMatrix matrix_from_columns(const std::vector<std::vector<double>>& cols) {
  EffortMatrix m;
  m.periods = cols.size();
  m.replications = cols[0].size();
  m.values.resize(m.periods * m.replications);
  for (std::size_t t = 0; t < m.periods; ++t)
    for (std::size_t r = 0; r < m.replications; ++r) m.at(r, t) = cols[t][r];
  return m;
}

int onset_or(const std::optional<int>& o, int sentinel) { return o ? *o : sentinel; }

}  // namespace

TEST_CASE("performance series is the column mean") {
  EffortMatrix m;
  m.replications = 2;
  m.periods = 3;
  m.values = {1.0, 0.4, 0.2, 1.0, 0.6, 0.2};
  const auto phi = performance_series(m);
  CHECK(phi[0] == 1.0);
  CHECK(phi[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi[2] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("column means agree across summation orders") {
  Rng rng(8);
  EffortMatrix m;
  m.replications = 700;
  m.periods = 5;
  m.values.resize(m.replications * m.periods);
  for (auto& v : m.values) v = rng.uniform(0.0, 1.0);
  const auto phi = performance_series(m);
  for (std::size_t t = 0; t < m.periods; ++t) {
    const auto col = m.column(t);
    double backward = 0.0;
    for (std::size_t r = col.size(); r-- > 0;) backward += col[r];
    CHECK(std::fabs(phi[t] - backward / col.size()) < 1e-12);
  }
}

TEST_CASE("performance series is permutation invariant over replications") {
  Rng rng(9);
  std::vector<double> col(101);
  for (auto& v : col) v = rng.normal(0.5, 0.2);
  std::vector<std::vector<double>> cols = {col};
  const auto phi = performance_series(matrix_from_columns(cols));
  std::reverse(cols[0].begin(), cols[0].end());
  const auto phi_rev = performance_series(matrix_from_columns(cols));
  CHECK(phi[0] == doctest::Approx(phi_rev[0]).epsilon(1e-14));
}

TEST_CASE("regularized incomplete beta reaches reference accuracy") {
  for (const auto& c : fixtures::kIBeta) {
    const double got = regularized_incomplete_beta(c.x, c.a, c.b);
    const double tol = 1e-10 * std::max(c.value, 1e-30);
    CHECK(std::fabs(got - c.value) <= std::max(tol, 1e-14));
  }
}

TEST_CASE("incomplete beta edge cases") {
  CHECK(regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0);
  CHECK(regularized_incomplete_beta(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::isnan(regularized_incomplete_beta(0.5, -1.0, 1.0)));
}

TEST_CASE("student t cdf is symmetric and matches the beta identity") {
  CHECK(student_t_cdf(0.0, 5.0) == doctest::Approx(0.5).epsilon(1e-12));
  for (double t : {0.3, 1.2, 2.8}) {
    for (double df : {2.0, 11.0, 699.0}) {
      CHECK(student_t_cdf(t, df) + student_t_cdf(-t, df) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("identical samples produce a null Welch result") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  const auto res = welch_t_test(xs, xs, 0.01);
  CHECK(res.t_stat == 0.0);
  CHECK(res.p_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!res.reject);
}

TEST_CASE("Welch test matches the reference implementation on frozen fixtures") {
  for (const auto& c : fixtures::kWelch) {
    const std::span<const double> a(c.a.data(), c.na);
    const std::span<const double> b(c.b.data(), c.nb);
    const auto res = welch_t_test(a, b, 0.01);
    CHECK(res.t_stat == doctest::Approx(c.t_stat).epsilon(1e-9));
    CHECK(res.df == doctest::Approx(c.df).epsilon(1e-9));
    CHECK(std::fabs(res.p_value - c.p_value) < 1e-6);
  }
}

TEST_CASE("textbook Welch fixture at coarse tolerance") {
  const auto res = welch_t_test(fixtures::kTextbookA, fixtures::kTextbookB, 0.01);
  CHECK(std::fabs(res.t_stat - fixtures::kTextbookWelchT) < 1e-3);
  CHECK(std::fabs(res.p_value - fixtures::kTextbookWelchP) < 1e-3);
}

TEST_CASE("swapping samples negates t and keeps the p value") {
  const std::vector<double> a = {0.3, 0.5, 0.9, 1.2, 0.8};
  const std::vector<double> b = {0.1, 0.4, 0.2, 0.6};
  const auto ab = welch_t_test(a, b, 0.05);
  const auto ba = welch_t_test(b, a, 0.05);
  CHECK(ab.t_stat == doctest::Approx(-ba.t_stat).epsilon(1e-14));
  CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-14));
}

TEST_CASE("degenerate samples are reported, not guessed") {
  const std::vector<double> flat = {1.0, 1.0, 1.0};
  const std::vector<double> one = {1.0};
  CHECK_THROWS_AS(welch_t_test(flat, flat, 0.01), DegenerateTest);
  CHECK_THROWS_AS(welch_t_test(one, flat, 0.01), DegenerateTest);
  CHECK_THROWS_AS(f_test_variance(flat, flat, 0.01), DegenerateTest);
  const std::vector<double> ok = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(paired_t_test(ok, ok, 0.01), DegenerateTest);
}

TEST_CASE("identical samples give F of one and no rejection") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0, 5.0};
  const auto res = f_test_variance(xs, xs, 0.01);
  CHECK(res.f_stat == 1.0);
  CHECK(res.p_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!res.reject);
}

TEST_CASE("F test matches the reference implementation on frozen fixtures") {
  for (const auto& c : fixtures::kF) {
    const std::span<const double> a(c.a.data(), c.na);
    const std::span<const double> b(c.b.data(), c.nb);
    const auto res = f_test_variance(a, b, 0.01);
    CHECK(res.f_stat == doctest::Approx(c.f_stat).epsilon(1e-9));
    CHECK(std::fabs(res.p_value - c.p_value) < 1e-6);
  }
}

TEST_CASE("doubling a sample scales F by four") {
  const std::vector<double> a = {0.9, 1.8, 2.2, 3.1, 4.5};
  const std::vector<double> b = {0.5, 1.1, 1.4, 2.0};
  std::vector<double> a2 = a;
  for (auto& v : a2) v *= 2.0;
  const auto base = f_test_variance(a, b, 0.01);
  const auto scaled = f_test_variance(a2, b, 0.01);
  if (sample_variance(a) >= sample_variance(b)) {
    CHECK(scaled.f_stat == doctest::Approx(4.0 * base.f_stat).epsilon(1e-14));
  }
}

TEST_CASE("identical columns stabilize immediately") {
  std::vector<double> col(50);
  Rng rng(3);
  for (auto& v : col) v = rng.normal(0.9, 0.05);
  const auto m = matrix_from_columns({col, col, col, col});
  const auto onset = stability_onset(m, 0.01);
  REQUIRE(onset.has_value());
  CHECK(*onset == 2);
}

TEST_CASE("a single large mean shift is detected at the right period") {
  Rng rng(4);
  const std::size_t reps = 700, T = 10, k = 6;  // shift enters at period 6
  std::vector<std::vector<double>> cols(T, std::vector<double>(reps));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t r = 0; r < reps; ++r)
      cols[t][r] = rng.normal(t + 1 >= k ? 1.0 : 0.5, 0.1);
  const auto onset = stability_onset(matrix_from_columns(cols), 0.01);
  REQUIRE(onset.has_value());
  CHECK(*onset == static_cast<int>(k) + 1);
}

TEST_CASE("persistent drift never stabilizes") {
  Rng rng(5);
  const std::size_t reps = 700, T = 8;
  std::vector<std::vector<double>> cols(T, std::vector<double>(reps));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t r = 0; r < reps; ++r)
      cols[t][r] = rng.normal(0.1 * static_cast<double>(t), 0.05);
  CHECK(!stability_onset(matrix_from_columns(cols), 0.01).has_value());
}

TEST_CASE("stability onset is monotone in alpha") {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t reps = 120, T = 8;
    std::vector<std::vector<double>> cols(T, std::vector<double>(reps));
    for (std::size_t t = 0; t < T; ++t) {
      const double drift = 0.02 * static_cast<double>(rng.next_u64() % 4) *
                           static_cast<double>(T - t);
      for (std::size_t r = 0; r < reps; ++r) cols[t][r] = rng.normal(drift, 0.12);
    }
    const auto m = matrix_from_columns(cols);
    const int strict = onset_or(stability_onset(m, 0.001), 99);
    const int loose = onset_or(stability_onset(m, 0.05), 99);
    CHECK(strict <= loose);
  }
}

TEST_CASE("paired mode uses the difference distribution") {
  Rng rng(7);
  std::vector<double> a(100), b(100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.normal(0.5, 0.2);
    b[i] = a[i] + rng.normal(0.05, 0.01);  // systematic paired shift
  }
  const auto paired = paired_t_test(b, a, 0.01);
  CHECK(paired.reject);
  CHECK(paired.df == doctest::Approx(99.0));
}

TEST_CASE("comparing a scenario with itself reports no differences") {
  Rng rng(10);
  ScenarioResult res;
  res.label = "self";
  res.normalized_efforts.replications = 80;
  res.normalized_efforts.periods = 6;
  res.normalized_efforts.values.resize(80 * 6);
  for (auto& v : res.normalized_efforts.values) v = rng.uniform(0.3, 1.0);
  res.phi = performance_series(res.normalized_efforts);
  res.per_period_sd.assign(6, 0.0);
  res.pooled_sd = pooled_sd(res.normalized_efforts);
  const auto rep = compare_scenarios(res, res, 0.01);
  CHECK(rep.final_diff == 0.0);
  CHECK(!rep.final_welch.reject);
  CHECK(rep.pooled_f.f_stat == 1.0);
  CHECK(!rep.pooled_f.reject);
}

TEST_CASE("dispersion readings: pooled versus per-period average") {
  EffortMatrix m;
  m.replications = 3;
  m.periods = 2;
  m.values = {0.0, 10.0, 1.0, 10.0, 2.0, 10.0};  // columns {0,1,2} and {10,10,10}... not quite
  // lay out explicitly: r-major, t = 0..1
  m.values = {0.0, 10.0, 1.0, 11.0, 2.0, 12.0};
  CHECK(pooled_sd(m) == doctest::Approx(sample_sd(m.values)).epsilon(1e-15));
  const double per = mean_per_period_sd(m);
  CHECK(per == doctest::Approx(1.0).epsilon(1e-12));  // both columns have sd 1
}
