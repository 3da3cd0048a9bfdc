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

#include <bit>
#include <cmath>

#include "doctest.h"
#include "lionlab/estimators.hpp"
#include "lionlab/harness.hpp"
#include "lionlab/lion.hpp"
#include "lionlab/problems.hpp"
#include "lionlab/schedules.hpp"
#include "test_util.hpp"

using namespace lionlab;
using lionlab::testing::caught;

TEST_CASE("momentum update arithmetic") {
  CHECK(momentum_update(Vector{7, -7}, Vector{3, 4}, 1.0) == Vector{3, 4});
  CHECK(momentum_update(Vector{2, 0}, Vector{4, 2}, 0.5) == Vector{3, 1});
  const Vector m = {1.25, -3.0, 1e6};
  const Vector tiny = momentum_update(m, Vector{100, 100, 100}, 1e-9);
  for (std::size_t k = 0; k < m.dim(); ++k) {
    // The move is beta * (g - m), up to rounding of m.
    CHECK(std::abs(tiny[k] - m[k]) <= 1e-9 * std::abs(100 - m[k]) * (1 + 1e-6) +
                                          4e-16 * std::abs(m[k]));
  }
}

TEST_CASE("storm update arithmetic") {
  CHECK(storm_update(Vector{0}, Vector{2}, Vector{1}, 0.5) == Vector{1.5});
  CHECK(storm_update(Vector{9, 9}, Vector{1, 2}, Vector{-4, 8}, 1.0) == Vector{1, 2});
}

TEST_CASE("storm with a vanishing correction equals momentum bitwise") {
  RandomStream rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    Vector m(6);
    Vector g(6);
    for (std::size_t k = 0; k < 6; ++k) {
      m[k] = rng.normal();
      g[k] = rng.normal();
    }
    const double beta = 1e-3 + (1.0 - 1e-3) * rng.uniform();
    const Vector a = storm_update(m, g, g, beta);
    const Vector b = momentum_update(m, g, beta);
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(std::bit_cast<std::uint64_t>(a[k]) == std::bit_cast<std::uint64_t>(b[k]));
    }
  }
}

TEST_CASE("storm matches its closed form") {
  // (1-b) m + b g + (1-b)(g - g') = g + (1-b)(m - g')
  RandomStream rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    Vector m(4), g(4), gp(4);
    for (std::size_t k = 0; k < 4; ++k) {
      m[k] = rng.normal();
      g[k] = rng.normal();
      gp[k] = rng.normal();
    }
    const double beta = rng.uniform() * 0.99 + 0.01;
    const Vector s = storm_update(m, g, gp, beta);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(s[k] == doctest::Approx(g[k] + (1 - beta) * (m[k] - gp[k])).epsilon(1e-12));
    }
  }
}

TEST_CASE("estimator parameter and shape errors") {
  for (double beta : {0.0, -0.1, 1.5, std::nan("")}) {
    auto e = caught([&] { momentum_update(Vector{1}, Vector{1}, beta); });
    REQUIRE(e);
    CHECK(e->category == ErrorCategory::kInvalidParameter);
    auto f = caught([&] { storm_update(Vector{1}, Vector{1}, Vector{1}, beta); });
    REQUIRE(f);
    CHECK(f->category == ErrorCategory::kInvalidParameter);
  }
  auto s = caught([] { momentum_update(Vector{1, 2}, Vector{1}, 0.5); });
  REQUIRE(s);
  CHECK(s->category == ErrorCategory::kShape);
  auto t = caught([] { storm_update(Vector{1}, Vector{1}, Vector{1, 2}, 0.5); });
  REQUIRE(t);
  CHECK(t->category == ErrorCategory::kShape);
}

TEST_CASE("storm tracks the gradient better than momentum along one trajectory") {
  // Both estimators are driven along the same Lion trajectory with the same
  // paired samples; only the recursion and its schedule differ.
  const Problem problem = make_logreg_problem(benchmark_problem(1));
  constexpr std::int64_t T = 10000;
  const auto inputs = schedule_inputs(problem, T);
  const Schedule s1 = schedule_for(TheoremId::kT1, inputs);
  const Schedule s2 = schedule_for(TheoremId::kT2, inputs);
  int storm_wins = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    LionState lion = lion_init(problem, s1.hyperparams(), T, 1, LionVariant::kV1, seed);
    RandomStream init = derive_stream(seed, 0, 1, StreamPurpose::kAux);
    Vector mom = problem.stoch_grad(0, lion.x, init).g;
    Vector storm = problem.batch_grad(0, lion.x, s2.B0, init);
    double err_mom = 0.0;
    double err_storm = 0.0;
    for (std::int64_t t = 1; t <= T; ++t) {
      if (t > 1) {
        RandomStream rng = derive_stream(seed, 0, t, StreamPurpose::kAux);
        const PairedGrad pg = problem.paired_grad(0, lion.x, lion.x_prev, rng);
        mom = momentum_update(mom, pg.g_curr, s1.beta2);
        storm = storm_update(storm, pg.g_curr, pg.g_prev, s2.beta2);
      }
      const Vector grad = problem.full_grad(lion.x);
      err_mom += distance_sq(mom, grad);
      err_storm += distance_sq(storm, grad);
      lion_step(lion, problem);
    }
    storm_wins += err_storm < err_mom;
  }
  CHECK(storm_wins >= 8);
}
