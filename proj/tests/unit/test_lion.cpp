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

#include "doctest.h"
#include "lionlab/estimators.hpp"
#include "lionlab/lion.hpp"
#include "test_util.hpp"

using namespace lionlab;
using lionlab::testing::caught;
using lionlab::testing::contains;

namespace {

// One sample per node, so every stochastic gradient is exact.
Problem single_sample(std::vector<double> a, double alpha = 0.0) {
  const int d = static_cast<int>(a.size());
  return Problem(d, {Shard{0, std::move(a), {1}}}, alpha);
}

Problem random_problem(int d, std::uint64_t seed) {
  ProblemConfig c;
  c.dim = d;
  c.samples_per_node = 32;
  c.heterogeneity = 0.0;
  c.seed = seed;
  return make_logreg_problem(c);
}

Hyperparams hp(double eta, double beta1, double beta2, double lambda = 0.0) {
  return {eta, lambda, beta1, beta2};
}

Schedule as_schedule(const Hyperparams& h, std::int64_t B0 = 1) {
  Schedule s;
  s.eta = h.eta;
  s.lambda = h.lambda;
  s.beta1 = h.beta1;
  s.beta2 = h.beta2;
  s.B0 = B0;
  return s;
}

}  // namespace

TEST_CASE("decoupled update arithmetic") {
  const Vector x = detail::decoupled_update(
      Vector{0, 0}, sign(Vector{2, -3}).to_vector(), hp(0.1, 1, 1));
  CHECK(x[0] == doctest::Approx(-0.1));
  CHECK(x[1] == doctest::Approx(0.1));
  // Weight decay shrinks toward zero: 1 - 0.1 * (1 + 0.5 * 1) = 0.85
  const Vector y = detail::decoupled_update(Vector{1, 0}, Vector{1, 0},
                                            hp(0.1, 1, 1, 0.5));
  CHECK(y[0] == doctest::Approx(0.85));
  CHECK(y[1] == 0.0);
}

TEST_CASE("init draws one sample, step 1 draws nothing") {
  const Problem p = single_sample({1.0, -1.0});
  // grad at 0 is -y a / 2
  LionState s = lion_init(p, hp(0.1, 0.5, 0.25), 10, 1, LionVariant::kV1, 3);
  CHECK(s.t == 1);
  CHECK(s.m == Vector{-0.5, 0.5});
  CHECK(s.v == s.m);
  lion_step(s, p);
  CHECK(s.t == 2);
  CHECK(s.v == Vector{-0.5, 0.5});
  CHECK(s.m == Vector{-0.5, 0.5});
  CHECK(s.x[0] == doctest::Approx(0.1));
  CHECK(s.x[1] == doctest::Approx(-0.1));
  CHECK(s.x_prev == Vector{0, 0});
}

TEST_CASE("v1 matches a hand-rolled recursion") {
  const Problem p = single_sample({0.5, -1.0, 0.25}, 0.1);
  const Hyperparams h = hp(0.05, 0.6, 0.36, 0.01);
  LionState s = lion_init(p, h, 40, 1, LionVariant::kV1, 9);
  Vector x(3), m = p.sample_grad(0, 0, x);
  for (int t = 1; t <= 40; ++t) {
    Vector v = m;
    if (t > 1) {
      const Vector g = p.sample_grad(0, 0, x);
      for (int k = 0; k < 3; ++k) {
        v[k] = (1 - h.beta1) * m[k] + h.beta1 * g[k];
        m[k] = (1 - h.beta2) * m[k] + h.beta2 * g[k];
      }
    }
    for (int k = 0; k < 3; ++k) {
      const double sg = v[k] > 0 ? 1.0 : v[k] < 0 ? -1.0 : 0.0;
      x[k] -= h.eta * (sg + h.lambda * x[k]);
    }
    lion_step(s, p);
    for (int k = 0; k < 3; ++k) {
      CHECK(s.x[k] == doctest::Approx(x[k]).epsilon(1e-12));
      CHECK(s.m[k] == doctest::Approx(m[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("v2 with a single sample tracks the gradient exactly") {
  const Problem p = single_sample({0.5, -1.0, 0.25}, 0.1);
  const Schedule sched = as_schedule(hp(0.05, 0.5, 0.25));
  const RunRecord v2 = lion_run(p, sched, 50, 1, LionVariant::kV2);
  const RunRecord v1 = lion_run(p, sched, 50, 1, LionVariant::kV1);
  double v1_err = 0.0;
  for (std::size_t i = 0; i < v2.series.size(); ++i) {
    CHECK(v2.series[i].est_err_m <= 1e-28);
    v1_err += v1.series[i].est_err_m;
  }
  CHECK(v1_err > 1e-6);
}

TEST_CASE("v1 and v2 keep the same m when x is frozen") {
  const Problem p = random_problem(6, 4);
  LionOptions opts;
  opts.allow_zero_eta = true;
  const Hyperparams h = hp(0.0, 0.5, 0.5);
  LionState a = lion_init(p, h, 30, 1, LionVariant::kV1, 2, opts);
  LionState b = lion_init(p, h, 30, 1, LionVariant::kV2, 2, opts);
  for (int t = 0; t < 30; ++t) {
    lion_step(a, p);
    lion_step(b, p);
    CHECK(a.m == b.m);
    CHECK(a.v == b.v);
  }
  CHECK(a.x == Vector(6));
}

TEST_CASE("iterates stay in the eta-ball and steps are bounded") {
  for (auto variant : {LionVariant::kV1, LionVariant::kV2}) {
    const Problem p = random_problem(12, 5);
    const Hyperparams h = hp(0.02, 0.3, 0.09, lambda_cap(0.02, 300));
    LionOptions opts;
    opts.check_invariants = true;
    const RunRecord r = lion_run(p, as_schedule(h, 4), 300, 7, variant, opts);
    REQUIRE(r.series.size() == 300);
    for (const auto& row : r.series) {
      CHECK(row.x_inf <= h.eta * static_cast<double>(row.t - 1) * (1 + 1e-12));
      CHECK(row.step_sq <= 4 * h.eta * h.eta * 12);
    }
  }
}

TEST_CASE("run records") {
  const Problem p = random_problem(5, 1);
  const Schedule s = as_schedule(hp(0.01, 0.5, 0.25));
  SUBCASE("T = 1 gives one row") {
    const RunRecord r = lion_run(p, s, 1, 1, LionVariant::kV1);
    REQUIRE(r.series.size() == 1);
    CHECK(r.series[0].t == 1);
    CHECK(r.series[0].x_inf == 0.0);
    CHECK(r.summary.avg_grad_l1 == r.series[0].grad_l1);
  }
  SUBCASE("same seed, same trajectory") {
    const RunRecord a = lion_run(p, s, 80, 11, LionVariant::kV2);
    const RunRecord b = lion_run(p, s, 80, 11, LionVariant::kV2);
    const RunRecord c = lion_run(p, s, 80, 12, LionVariant::kV2);
    CHECK(same_trajectory(a, b));
    CHECK_FALSE(same_trajectory(a, c));
    CHECK(a.config.algorithm == Algorithm::kLionV2);
    CHECK(a.config.run_seed == 11);
  }
}

TEST_CASE("blow-up is reported with its step") {
  const Problem p = single_sample({1.0, -1.0});
  LionOptions opts;
  opts.check_invariants = false;
  LionState s = lion_init(p, hp(1e308, 0.25, 0.25), 5, 1, LionVariant::kV1, 1, opts);
  // x_2 = (1e308, -1e308). The gradient vanishes there, momentum keeps the
  // sign and x_3 overflows.
  lion_step(s, p);
  try {
    lion_step(s, p);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() == 2);
    CHECK(e.category() == ErrorCategory::kDivergence);
  }
}

TEST_CASE("init rejects bad hyperparameters by relation") {
  const Problem p = random_problem(3, 1);
  auto expect = [&](const Hyperparams& h, LionVariant v, std::string rel,
                    LionOptions o = {}) {
    auto e = caught([&] { lion_init(p, h, 100, 1, v, 1, o); });
    REQUIRE(e);
    CHECK(e->category == ErrorCategory::kConfiguration);
    CHECK_MESSAGE(contains(e->message, rel), e->message);
  };
  expect(hp(0.01, 0.1, 0.5), LionVariant::kV1, std::string(relation::kBeta2SqLeBeta1));
  expect(hp(0.01, 0.5, 0.6), LionVariant::kV2, std::string(relation::kBeta2LeBeta1));
  expect(hp(0.01, 0.9, 0.25), LionVariant::kV1, std::string(relation::kBeta1LeSqrtBeta2));
  expect(hp(0.01, 0.5, 0.25, 1.0), LionVariant::kV1, std::string(relation::kLambdaCap));
  expect(hp(0.0, 0.5, 0.25), LionVariant::kV1, std::string(relation::kEtaPositive));
  expect(hp(0.01, 0.0, 0.25), LionVariant::kV1, std::string(relation::kBeta1Range));
  LionOptions far;
  far.x1 = Vector{0.5, 0, 0};
  expect(hp(0.01, 0.5, 0.25), LionVariant::kV1, "||x1||_inf", far);

  auto b0 = caught([&] { lion_init(p, hp(0.01, 0.5, 0.25), 10, 0, LionVariant::kV2, 1); });
  REQUIRE(b0);
  CHECK(b0->category == ErrorCategory::kConfiguration);
  CHECK(contains(b0->message, "B0"));

  LionOptions wrong;
  wrong.x1 = Vector{0, 0};
  auto shape = caught([&] { lion_init(p, hp(0.01, 0.5, 0.25), 10, 1, LionVariant::kV1, 1, wrong); });
  REQUIRE(shape);
  CHECK(shape->category == ErrorCategory::kShape);
}
