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
#include <string>
#include <string_view>
#include <vector>

namespace lionlab {

// Which convergence theorem's hyperparameter settings a schedule follows.
// T5a/T5b are the two learning-rate choices of the sign-server result.
enum class TheoremId { kT1, kT2, kT3, kT4, kT5a, kT5b, kT7, kT8 };

std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view text);
const std::vector<TheoremId>& all_theorems();

struct Hyperparams {
  double eta = 0.0;
  double lambda = 0.0;
  double beta1 = 1.0;
  double beta2 = 1.0;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

struct Relation {
  std::string name;
  bool satisfied = false;
};

struct Schedule {
  TheoremId theorem = TheoremId::kT1;
  double eta = 0.0;
  double lambda = 0.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
  std::int64_t B0 = 1;
  // Filled by schedule_for / validate; all true for a usable schedule.
  std::vector<Relation> required_relations;

  Hyperparams hyperparams() const { return {eta, lambda, beta1, beta2}; }
};

// Horizon, dimension and node count, plus the problem constants that the
// weight-decay rule of T7/T8 needs (L and G).
struct ScheduleInputs {
  std::int64_t T = 1;
  int d = 1;
  int n = 1;
  double smoothness = 0.0;
  double grad_bound = 0.0;
};

// Relation names, exactly as reported by validate.
namespace relation {
inline constexpr std::string_view kEtaPositive = "eta > 0";
inline constexpr std::string_view kBeta1Range = "0 < beta1 ≤ 1";
inline constexpr std::string_view kBeta2Range = "0 < beta2 ≤ 1";
inline constexpr std::string_view kLambdaNonneg = "lambda ≥ 0";
inline constexpr std::string_view kBatchPositive = "B0 ≥ 1";
inline constexpr std::string_view kBeta2SqLeBeta1 = "beta2² ≤ beta1";
inline constexpr std::string_view kBeta2LeBeta1 = "beta2 ≤ beta1";
inline constexpr std::string_view kBeta1LeSqrtBeta2 = "beta1 ≤ sqrt(beta2)";
inline constexpr std::string_view kLambdaCap = "lambda ≤ 1/(2ηT)";
inline constexpr std::string_view kLambdaMinRule =
    "lambda ≤ min{sqrt(L)/(T·sqrt(ηG)), 1/(2ηT)}";
inline constexpr std::string_view kHorizonGeN = "T ≥ n";
inline constexpr std::string_view kHorizonGeNSq = "T ≥ n²";
}  // namespace relation

// 1/(2 eta T), the weight-decay cap that keeps the update step bounded.
double lambda_cap(double eta, std::int64_t T);

// Builds the theorem's hyperparameters with every O(.) constant set to 1,
// betas clipped into (0, 1], beta1 = sqrt(beta2) and the largest admissible
// lambda. Throws a configuration error naming the first failed relation.
Schedule schedule_for(TheoremId id, const ScheduleInputs& in);

// Evaluates every relation the theorem requires. Never throws.
std::vector<Relation> validate(const Schedule& schedule,
                               const ScheduleInputs& in);

// Throws a configuration error naming each failed relation, if any.
void require_valid(const Schedule& schedule, const ScheduleInputs& in);

}  // namespace lionlab
