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

#pragma once

#include <cstdint>
#include <optional>

#include "lionlab/problems.hpp"
#include "lionlab/record.hpp"
#include "lionlab/schedules.hpp"
#include "lionlab/vector.hpp"

namespace lionlab {

enum class LionVariant { kV1, kV2 };

#ifdef NDEBUG
inline constexpr bool kCheckInvariantsByDefault = false;
#else
inline constexpr bool kCheckInvariantsByDefault = true;
#endif

struct LionOptions {
  // Initial point; defaults to the zero vector. Must satisfy ||x1||_inf <= eta.
  std::optional<Vector> x1;
  // Sampling used by the B0-batch initialization of the VR variants.
  SamplingMode init_sampling = SamplingMode::kWithReplacement;
  // Check the bounded-iterate / bounded-step invariants after every step.
  bool check_invariants = kCheckInvariantsByDefault;
  // eta = 0 freezes x; only meant for estimator experiments.
  bool allow_zero_eta = false;
};

struct LionState {
  Vector x;       // x_t
  Vector x_prev;  // x_{t-1}; equals x_1 at t = 1
  Vector m;       // m_{t-1} before a step, m_t after it
  Vector v;       // v of the most recent step (v_1 = m_1 after init)
  std::int64_t t = 1;
  std::int64_t horizon = 1;
  Hyperparams hp;
  LionVariant variant = LionVariant::kV1;
  std::uint64_t seed = 0;
  bool check_invariants = kCheckInvariantsByDefault;
};

// m_1 = v_1 is one stochastic gradient (V1) or the mean of a B0 batch (V2).
// Validates the variant's beta chain, ||x1||_inf <= eta and
// lambda <= 1/(2 eta T).
LionState lion_init(const Problem& problem, const Hyperparams& hp,
                    std::int64_t T, std::int64_t B0, LionVariant variant,
                    std::uint64_t seed, const LionOptions& options = {});

// One iteration: v_t from m_{t-1} and a fresh sample, m_t by momentum (V1) or
// STORM (V2) on the same sample, then x_{t+1} = x_t - eta (sign(v_t) + lambda x_t).
// Step 1 uses the initialization v_1 = m_1 and draws nothing.
void lion_step(LionState& state, const Problem& problem);

// T iterations under a schedule with full-gradient metrics per step.
RunRecord lion_run(const Problem& problem, const Schedule& schedule,
                   std::int64_t T, std::uint64_t seed, LionVariant variant,
                   const LionOptions& options = {});

namespace detail {

// Shared by the centralized and distributed drivers.
void check_hyperparams(const Hyperparams& hp, std::int64_t T,
                       bool squared_chain, bool linear_chain,
                       bool allow_zero_eta);
Vector initial_point(int dim, const Hyperparams& hp, const LionOptions& opts);
// x_{t+1} = x_t - eta * (direction + lambda * x_t).
Vector decoupled_update(const Vector& x, const Vector& direction,
                        const Hyperparams& hp);
void require_finite(const Vector& v, std::int64_t step, const char* what);
// ||x_{t+1}||_inf <= eta (t + 1); ||x_{t+1} - x_t||^2 <= 4 eta^2 d for t <= T.
void check_bounded_iterates(const Vector& x_t, const Vector& x_next,
                            std::int64_t t, std::int64_t horizon,
                            const Hyperparams& hp);

}  // namespace detail
}  // namespace lionlab
