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

#include "lionlab/lion.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "lionlab/errors.hpp"
#include "lionlab/estimators.hpp"

namespace lionlab {
namespace detail {

void check_hyperparams(const Hyperparams& hp, std::int64_t T,
                       bool squared_chain, bool linear_chain,
                       bool allow_zero_eta) {
  auto fail = [](std::string_view relation) {
    throw Error(ErrorCategory::kConfiguration,
                "hyperparameters violate " + std::string(relation));
  };
  if (T < 1) fail("T ≥ 1");
  if (!(allow_zero_eta ? hp.eta >= 0.0 : hp.eta > 0.0) ||
      !std::isfinite(hp.eta)) {
    fail(relation::kEtaPositive);
  }
  if (!(hp.beta1 > 0.0 && hp.beta1 <= 1.0)) fail(relation::kBeta1Range);
  if (!(hp.beta2 > 0.0 && hp.beta2 <= 1.0)) fail(relation::kBeta2Range);
  if (!(hp.lambda >= 0.0)) fail(relation::kLambdaNonneg);
  if (squared_chain && !(hp.beta2 * hp.beta2 <= hp.beta1)) {
    fail(relation::kBeta2SqLeBeta1);
  }
  if (linear_chain && !(hp.beta2 <= hp.beta1)) fail(relation::kBeta2LeBeta1);
  if (!(hp.beta1 <= std::sqrt(hp.beta2))) fail(relation::kBeta1LeSqrtBeta2);
  if (hp.eta > 0.0 && !(hp.lambda <= lambda_cap(hp.eta, T))) {
    fail(relation::kLambdaCap);
  }
}

Vector initial_point(int dim, const Hyperparams& hp, const LionOptions& opts) {
  if (!opts.x1) return Vector(static_cast<std::size_t>(dim));
  const Vector& x1 = *opts.x1;
  if (x1.dim() != static_cast<std::size_t>(dim)) {
    throw Error(ErrorCategory::kShape, "x1 has the wrong dimension");
  }
  if (!x1.all_finite() || !(linf_norm(x1) <= hp.eta)) {
    throw Error(ErrorCategory::kConfiguration,
                "initial point violates ||x1||_inf ≤ eta");
  }
  return x1;
}

Vector decoupled_update(const Vector& x, const Vector& direction,
                        const Hyperparams& hp) {
  Vector next(x.dim());
  for (std::size_t k = 0; k < x.dim(); ++k) {
    next[k] = x[k] - hp.eta * (direction[k] + hp.lambda * x[k]);
  }
  return next;
}

void require_finite(const Vector& v, std::int64_t step, const char* what) {
  if (!v.all_finite()) {
    std::ostringstream msg;
    msg << "non-finite " << what << " at step " << step;
    throw DivergenceError(step, msg.str());
  }
}

void check_bounded_iterates(const Vector& x_t, const Vector& x_next,
                            std::int64_t t, std::int64_t horizon,
                            const Hyperparams& hp) {
  const double d = static_cast<double>(x_t.dim());
  const double bound_inf = hp.eta * static_cast<double>(t + 1);
  if (linf_norm(x_next) > bound_inf) {
    std::ostringstream msg;
    msg << "||x_" << t + 1 << "||_inf = " << linf_norm(x_next)
        << " exceeds eta * t = " << bound_inf;
    throw Error(ErrorCategory::kInvariantViolation, msg.str());
  }
  if (t <= horizon) {
    const double step_sq = distance_sq(x_next, x_t);
    const double bound_step = 4.0 * hp.eta * hp.eta * d;
    if (step_sq > bound_step) {
      std::ostringstream msg;
      msg << "||x_" << t + 1 << " - x_" << t << "||^2 = " << step_sq
          << " exceeds 4 eta^2 d = " << bound_step;
      throw Error(ErrorCategory::kInvariantViolation, msg.str());
    }
  }
}

}  // namespace detail

LionState lion_init(const Problem& problem, const Hyperparams& hp,
                    std::int64_t T, std::int64_t B0, LionVariant variant,
                    std::uint64_t seed, const LionOptions& options) {
  const bool v1 = variant == LionVariant::kV1;
  detail::check_hyperparams(hp, T, /*squared_chain=*/v1, /*linear_chain=*/!v1,
                            options.allow_zero_eta);
  if (B0 < 1) {
    throw Error(ErrorCategory::kConfiguration, "hyperparameters violate B0 ≥ 1");
  }

  LionState s;
  s.x = detail::initial_point(problem.dim(), hp, options);
  s.x_prev = s.x;
  s.t = 1;
  s.horizon = T;
  s.hp = hp;
  s.variant = variant;
  s.seed = seed;
  s.check_invariants = options.check_invariants;

  RandomStream rng = derive_stream(seed, 0, 1, StreamPurpose::kSample);
  if (v1) {
    s.m = problem.stoch_grad(0, s.x, rng).g;
  } else {
    s.m = problem.batch_grad(0, s.x, B0, rng, options.init_sampling);
  }
  s.v = s.m;
  return s;
}

void lion_step(LionState& s, const Problem& problem) {
  if (s.t > 1) {
    RandomStream rng = derive_stream(s.seed, 0, static_cast<std::uint64_t>(s.t),
                                     StreamPurpose::kSample);
    if (s.variant == LionVariant::kV1) {
      const Vector g = problem.stoch_grad(0, s.x, rng).g;
      s.v = momentum_update(s.m, g, s.hp.beta1);
      s.m = momentum_update(s.m, g, s.hp.beta2);
    } else {
      const PairedGrad pg = problem.paired_grad(0, s.x, s.x_prev, rng);
      s.v = momentum_update(s.m, pg.g_curr, s.hp.beta1);
      s.m = storm_update(s.m, pg.g_curr, pg.g_prev, s.hp.beta2);
    }
  }
  detail::require_finite(s.v, s.t, "v");
  detail::require_finite(s.m, s.t, "m");

  Vector next = detail::decoupled_update(s.x, sign(s.v).to_vector(), s.hp);
  detail::require_finite(next, s.t, "x");
  if (s.check_invariants) {
    detail::check_bounded_iterates(s.x, next, s.t, s.horizon, s.hp);
  }
  s.x_prev = std::move(s.x);
  s.x = std::move(next);
  ++s.t;
}

RunRecord lion_run(const Problem& problem, const Schedule& schedule,
                   std::int64_t T, std::uint64_t seed, LionVariant variant,
                   const LionOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  LionState s = lion_init(problem, schedule.hyperparams(), T, schedule.B0,
                          variant, seed, options);

  RunRecord record;
  record.config.schedule = schedule;
  record.config.algorithm =
      variant == LionVariant::kV1 ? Algorithm::kLionV1 : Algorithm::kLionV2;
  record.config.T = T;
  record.config.n = problem.nodes();
  record.config.d = problem.dim();
  record.config.run_seed = seed;
  record.series.reserve(static_cast<std::size_t>(T));

  for (std::int64_t t = 1; t <= T; ++t) {
    const Vector grad = problem.full_grad(s.x);
    RunRow row;
    row.t = t;
    row.grad_l1 = l1_norm(grad);
    row.grad_l2_sq = l2_norm_sq(grad);
    row.x_inf = linf_norm(s.x);
    lion_step(s, problem);
    row.est_err_v = distance_sq(s.v, grad);
    row.est_err_m = distance_sq(s.m, grad);
    row.step_sq = distance_sq(s.x, s.x_prev);
    record.series.push_back(row);
  }
  summarize(record);
  record.summary.wallclock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return record;
}

}  // namespace lionlab
