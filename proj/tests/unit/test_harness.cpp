// Copyright 2026 The LionLab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "lionlab/harness.hpp"
#include "test_util.hpp"

using namespace lionlab;
using lionlab::testing::caught;
using lionlab::testing::contains;

namespace {

RunRecord synthetic(std::int64_t T, std::uint64_t seed, double avg) {
  RunRecord r;
  r.config.T = T;
  r.config.run_seed = seed;
  r.summary.avg_grad_l1 = avg;
  r.summary.min_grad_l1 = avg;
  return r;
}

ProblemConfig small_problem(int nodes = 1) {
  ProblemConfig c;
  c.dim = 5;
  c.nodes = nodes;
  c.samples_per_node = 16;
  c.heterogeneity = 0.5;
  c.seed = 2;
  return c;
}

}  // namespace

TEST_CASE("sweep counting, ordering and determinism") {
  const ExperimentSpec spec = theorem_experiment(TheoremId::kT1, small_problem());
  const std::vector<std::int64_t> Ts = {100};
  const std::vector<std::uint64_t> seeds = {1, 2};
  const auto a = sweep(spec, Ts, seeds);
  REQUIRE(a.size() == 2);
  CHECK(a[0].config.run_seed == 1);
  CHECK(a[1].config.run_seed == 2);
  CHECK(a[0].series.size() == 100);
  const auto b = sweep(spec, Ts, seeds);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_trajectory(a[i], b[i]));

  const std::vector<std::int64_t> two = {50, 120};
  const auto c = sweep(spec, two, seeds);
  REQUIRE(c.size() == 4);
  CHECK(c[0].config.T == 50);
  CHECK(c[3].config.T == 120);
  CHECK(c[3].series.size() == 120);
  // Schedule recomputed per T.
  CHECK(c[0].config.schedule.eta > c[3].config.schedule.eta);
}

TEST_CASE("sweep preconditions") {
  const std::vector<std::uint64_t> seeds = {1};
  SUBCASE("T list must be ascending") {
    const std::vector<std::int64_t> Ts = {200, 100};
    auto e = caught([&] {
      sweep(theorem_experiment(TheoremId::kT1, small_problem()), Ts, seeds);
    });
    REQUIRE(e);
    CHECK(e->category == ErrorCategory::kConfiguration);
  }
  SUBCASE("DisV2 with n = 4 passes T ≥ n² from T = 100") {
    const ExperimentSpec spec = theorem_experiment(TheoremId::kT4, small_problem(4));
    CHECK(spec.algorithm == Algorithm::kDisV2);
    const std::vector<std::int64_t> Ts = {100, 1000, 10000};
    const auto r = sweep(spec, Ts, seeds);
    CHECK(r.size() == 3);
  }
  SUBCASE("a side-condition failure names T") {
    const ExperimentSpec spec = theorem_experiment(TheoremId::kT4, small_problem(4));
    const std::vector<std::int64_t> Ts = {10, 100};
    auto e = caught([&] { sweep(spec, Ts, seeds); });
    REQUIRE(e);
    CHECK(e->category == ErrorCategory::kConfiguration);
    CHECK(contains(e->message, "T=10"));
    CHECK(contains(e->message, std::string(relation::kHorizonGeNSq)));
  }
}

TEST_CASE("fit_rate on exact power laws") {
  std::vector<RunRecord> records;
  for (double e = 2.0; e <= 5.0; e += 0.5) {
    const auto T = static_cast<std::int64_t>(std::llround(std::pow(10.0, e)));
    for (std::uint64_t s = 1; s <= 3; ++s) {
      records.push_back(synthetic(T, s, 3.0 * std::pow(static_cast<double>(T), -0.25)));
    }
  }
  const RateFit fit = fit_rate(records);
  CHECK(std::abs(fit.slope + 0.25) <= 1e-12);
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.points.size() == 7);

  for (auto& r : records) r.summary.avg_grad_l1 = 0.7;
  const RateFit flat = fit_rate(records);
  CHECK(std::abs(flat.slope) <= 1e-15);
  CHECK(flat.r_squared >= 0.0);
  CHECK(flat.r_squared <= 1.0);
}

TEST_CASE("fit_rate takes the median over seeds") {
  const std::vector<RunRecord> records = {
      synthetic(10, 1, 1.0), synthetic(10, 2, 100.0), synthetic(10, 3, 2.0),
      synthetic(100, 1, 1.0), synthetic(100, 2, 0.2), synthetic(100, 3, 0.1)};
  const RateFit fit = fit_rate(records);
  // Medians 2.0 at T = 10 and 0.2 at T = 100.
  CHECK(fit.slope == doctest::Approx(-1.0));
}

TEST_CASE("fit_rate with 5% multiplicative noise") {
  // 200000 replicates in a separate run gave a slope error sd of 0.0078 and a
  // max of 0.034; the tolerance below is 7.7 sd.
  RandomStream rng(20260101);
  const int reps = 500;
  std::vector<double> errors;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 8; ++i) {
      const double T = std::pow(10.0, 2.0 + 3.0 * i / 7.0);
      pts.emplace_back(T, 3.0 * std::pow(T, -1.0 / 3.0) * (1.0 + 0.05 * rng.normal()));
    }
    const double err = fit_power_law(pts).slope + 1.0 / 3.0;
    CHECK(std::abs(err) <= 0.06);
    errors.push_back(err);
  }
  const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) / reps;
  double var = 0.0;
  for (double e : errors) var += (e - mean) * (e - mean);
  const double sd = std::sqrt(var / (reps - 1));
  // Closed form 0.05 / sqrt(Sxx) for these eight points.
  CHECK(sd == doctest::Approx(0.00782).epsilon(0.15));
}

TEST_CASE("fit_rate needs two distinct T values") {
  const std::vector<RunRecord> one = {synthetic(100, 1, 1.0), synthetic(100, 2, 2.0)};
  auto e = caught([&] { fit_rate(one); });
  REQUIRE(e);
  CHECK(e->category == ErrorCategory::kInsufficientData);
  CHECK(caught([] { fit_rate({}); })->category == ErrorCategory::kInsufficientData);
  const std::vector<std::pair<double, double>> bad = {{10, 1}, {100, -1}};
  CHECK(caught([&] { fit_power_law(bad); })->category == ErrorCategory::kInvalidInput);
}

TEST_CASE("compare_variants") {
  std::vector<RunRecord> a, b;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    a.push_back(synthetic(1000, s, 0.1 * static_cast<double>(s)));
    b.push_back(synthetic(1000, s, 0.2 * static_cast<double>(s)));
  }
  SUBCASE("ties are not wins") {
    const Comparison c = compare_variants(a, a, Metric::kAvgGradL1,
                                          Direction::kLowerIsBetter);
    CHECK(c.wins == 0);
    CHECK(c.total == 10);
  }
  SUBCASE("uniformly half the metric wins every seed") {
    const Comparison c = compare_variants(a, b, Metric::kAvgGradL1,
                                          Direction::kLowerIsBetter);
    CHECK(c.wins == 10);
    CHECK(c.median_a == doctest::Approx(0.55));
    CHECK(c.median_b == doctest::Approx(1.1));
    CHECK(compare_variants(a, b, Metric::kAvgGradL1, Direction::kHigherIsBetter)
              .wins == 0);
  }
  SUBCASE("mismatched seed sets") {
    std::vector<RunRecord> shifted = b;
    shifted.back().config.run_seed = 99;
    auto e = caught([&] {
      compare_variants(a, shifted, Metric::kAvgGradL1, Direction::kLowerIsBetter);
    });
    REQUIRE(e);
    CHECK(e->category == ErrorCategory::kInvalidPairing);
    shifted.pop_back();
    CHECK(caught([&] {
            compare_variants(a, shifted, Metric::kAvgGradL1,
                             Direction::kLowerIsBetter);
          })->category == ErrorCategory::kInvalidPairing);
  }
  SUBCASE("estimator metrics average the series") {
    RunRecord r = synthetic(3, 1, 0.0);
    r.series = {RunRow{.t = 1, .est_err_m = 1.0}, RunRow{.t = 2, .est_err_m = 2.0},
                RunRow{.t = 3, .est_err_m = 6.0}};
    CHECK(metric_value(r, Metric::kAvgEstErrM) == 3.0);
    CHECK(metric_value(r, Metric::kAvgEstErrV) == 0.0);
  }
}

TEST_CASE("records carry a consistent summary") {
  const ExperimentSpec spec = theorem_experiment(TheoremId::kT8, small_problem(3));
  const Problem p = make_logreg_problem(spec.problem);
  const Schedule s = schedule_for(spec.theorem, schedule_inputs(p, 200));
  const RunRecord r = run_once(p, spec, s, 200, 5);
  REQUIRE(r.series.size() == 200);
  double sum = 0.0;
  for (const auto& row : r.series) sum += row.grad_l1;
  CHECK(r.summary.avg_grad_l1 == doctest::Approx(sum / 200).epsilon(1e-12));
  CHECK(r.config.n == 3);
  CHECK(r.config.d == 5);
  CHECK(r.config.problem_seed == 2);
  CHECK(r.config.algorithm == Algorithm::kCeV2);
  CHECK(r.config.q1.kind == CompressorKind::kUnbiasedSign);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
  auto e = caught([] {
    parallel_for(50, [](std::size_t i) {
      if (i == 17) throw Error(ErrorCategory::kDivergence, "boom");
    });
  });
  REQUIRE(e);
  CHECK(e->message == "boom");
}
