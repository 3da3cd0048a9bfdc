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

#include "lionlab/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lionlab/errors.hpp"

namespace lionlab {
namespace {

struct TheoremInfo {
  TheoremId id;
  std::string_view name;
};

constexpr TheoremInfo kTheorems[] = {
    {TheoremId::kT1, "T1"},   {TheoremId::kT2, "T2"},
    {TheoremId::kT3, "T3"},   {TheoremId::kT4, "T4"},
    {TheoremId::kT5a, "T5a"}, {TheoremId::kT5b, "T5b"},
    {TheoremId::kT7, "T7"},   {TheoremId::kT8, "T8"},
};

enum class Chain { kSquared, kLinear, kUpperOnly };

Chain chain_for(TheoremId id) {
  switch (id) {
    case TheoremId::kT2: return Chain::kLinear;
    case TheoremId::kT4:
    case TheoremId::kT8: return Chain::kUpperOnly;
    default: return Chain::kSquared;
  }
}

bool uses_min_rule(TheoremId id) {
  return id == TheoremId::kT7 || id == TheoremId::kT8;
}

double min_rule_cap(double eta, const ScheduleInputs& in) {
  const double T = static_cast<double>(in.T);
  return std::min(std::sqrt(in.smoothness) / (T * std::sqrt(eta * in.grad_bound)),
                  lambda_cap(eta, in.T));
}

std::int64_t ceil_batch(double value) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(value)));
}

}  // namespace

std::string_view to_string(TheoremId id) {
  for (const auto& t : kTheorems) {
    if (t.id == id) return t.name;
  }
  return "?";
}

std::optional<TheoremId> parse_theorem(std::string_view text) {
  for (const auto& t : kTheorems) {
    if (t.name == text) return t.id;
  }
  return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& t : kTheorems) out.push_back(t.id);
    return out;
  }();
  return ids;
}

double lambda_cap(double eta, std::int64_t T) {
  return 1.0 / (2.0 * eta * static_cast<double>(T));
}

std::vector<Relation> validate(const Schedule& s, const ScheduleInputs& in) {
  std::vector<Relation> out;
  auto add = [&out](std::string_view name, bool ok) {
    out.push_back({std::string(name), ok});
  };
  add(relation::kEtaPositive, s.eta > 0.0 && std::isfinite(s.eta));
  add(relation::kBeta1Range, s.beta1 > 0.0 && s.beta1 <= 1.0);
  add(relation::kBeta2Range, s.beta2 > 0.0 && s.beta2 <= 1.0);
  add(relation::kLambdaNonneg, s.lambda >= 0.0);
  add(relation::kBatchPositive, s.B0 >= 1);

  switch (chain_for(s.theorem)) {
    case Chain::kSquared:
      add(relation::kBeta2SqLeBeta1, s.beta2 * s.beta2 <= s.beta1);
      break;
    case Chain::kLinear:
      add(relation::kBeta2LeBeta1, s.beta2 <= s.beta1);
      break;
    case Chain::kUpperOnly:
      break;
  }
  add(relation::kBeta1LeSqrtBeta2, s.beta1 <= std::sqrt(s.beta2));

  const bool eta_ok = s.eta > 0.0;
  if (uses_min_rule(s.theorem)) {
    const bool consts_ok = in.smoothness > 0.0 && in.grad_bound > 0.0;
    add(relation::kLambdaMinRule,
        eta_ok && consts_ok && s.lambda <= min_rule_cap(s.eta, in));
  } else {
    add(relation::kLambdaCap, eta_ok && s.lambda <= lambda_cap(s.eta, in.T));
  }

  const auto n = static_cast<std::int64_t>(in.n);
  if (s.theorem == TheoremId::kT3 || s.theorem == TheoremId::kT7) {
    add(relation::kHorizonGeN, in.T >= n);
  }
  if (s.theorem == TheoremId::kT4) {
    add(relation::kHorizonGeNSq, in.T >= n * n);
  }
  return out;
}

void require_valid(const Schedule& schedule, const ScheduleInputs& in) {
  const auto relations = validate(schedule, in);
  std::ostringstream failed;
  bool any = false;
  for (const auto& r : relations) {
    if (!r.satisfied) {
      failed << (any ? "; " : "") << r.name;
      any = true;
    }
  }
  if (any) {
    throw Error(ErrorCategory::kConfiguration,
                "schedule " + std::string(to_string(schedule.theorem)) +
                    " violates: " + failed.str());
  }
}

Schedule schedule_for(TheoremId id, const ScheduleInputs& in) {
  if (in.T < 1 || in.d < 1 || in.n < 1) {
    throw Error(ErrorCategory::kConfiguration,
                "schedule_for: T, d and n must be >= 1");
  }
  const double T = static_cast<double>(in.T);
  const double d = static_cast<double>(in.d);
  const double n = static_cast<double>(in.n);

  Schedule s;
  s.theorem = id;
  s.B0 = 1;
  switch (id) {
    case TheoremId::kT1:
      s.beta2 = std::pow(T, -0.5);
      s.eta = std::pow(d, -0.5) * std::pow(T, -0.75);
      break;
    case TheoremId::kT2:
      s.beta2 = std::pow(T, -2.0 / 3.0);
      s.eta = std::pow(d, -0.5) * std::pow(T, -2.0 / 3.0);
      s.B0 = ceil_batch(std::cbrt(T));
      break;
    case TheoremId::kT3:
      s.beta2 = std::min(1.0, std::sqrt(n) * std::pow(T, -0.5));
      s.eta = std::pow(n, 0.25) * std::pow(d, -0.5) * std::pow(T, -0.75);
      break;
    case TheoremId::kT4:
      s.beta2 = std::min(1.0, std::cbrt(n) * std::pow(T, -2.0 / 3.0));
      s.eta = std::cbrt(n) * std::pow(d, -0.5) * std::pow(T, -2.0 / 3.0);
      s.B0 = ceil_batch(std::pow(n, -2.0 / 3.0) * std::cbrt(T));
      break;
    case TheoremId::kT5a:
      s.beta2 = 0.5;
      s.eta = std::pow(T, -0.5) * std::pow(d, -0.5);
      break;
    case TheoremId::kT5b:
      s.beta2 = 0.5;
      s.eta = std::pow(n, -0.5);
      break;
    case TheoremId::kT7:
      // eta first, then beta2 (depends on eta), then lambda.
      s.eta = std::min(std::pow(T, -0.5) * std::pow(d, -0.5),
                       std::pow(n, 0.4) * std::pow(T, -0.6) * std::pow(d, -0.2));
      s.beta2 = std::min(1.0, std::cbrt(n) * std::pow(s.eta, 2.0 / 3.0) *
                                  std::cbrt(d));
      break;
    case TheoremId::kT8:
      s.beta2 = std::pow(T, -0.5);
      s.eta = std::pow(d, -0.5) * std::pow(T, -0.5);
      s.B0 = ceil_batch(std::pow(n, -2.0 / 3.0) * std::cbrt(T));
      break;
  }
  s.beta1 = std::sqrt(s.beta2);
  if (uses_min_rule(id)) {
    if (!(in.smoothness > 0.0 && in.grad_bound > 0.0)) {
      throw Error(ErrorCategory::kConfiguration,
                  "schedule_for: " + std::string(to_string(id)) +
                      " needs positive L and G");
    }
    s.lambda = min_rule_cap(s.eta, in);
  } else {
    s.lambda = lambda_cap(s.eta, in.T);
  }
  s.required_relations = validate(s, in);
  require_valid(s, in);
  return s;
}

}  // namespace lionlab
