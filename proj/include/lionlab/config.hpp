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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lionlab/harness.hpp"
#include "lionlab/problems.hpp"
#include "lionlab/record.hpp"
#include "lionlab/schedules.hpp"

namespace lionlab {

// Theorem settings, optionally with individual numbers overridden. With all
// five numbers given and no theorem, the algorithm's default theorem supplies
// the relations to validate against.
struct ScheduleSpec {
  std::optional<TheoremId> theorem;
  std::optional<double> eta;
  std::optional<double> lambda;
  std::optional<double> beta1;
  std::optional<double> beta2;
  std::optional<std::int64_t> B0;

  bool fully_explicit() const { return eta && lambda && beta1 && beta2 && B0; }

  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct RunConfig {
  std::string kind = "logreg";
  ProblemConfig problem;
  Algorithm algorithm = Algorithm::kLionV1;
  std::optional<CompressorKind> q1;
  std::optional<CompressorKind> q2;
  ScheduleSpec schedule;
  std::int64_t T = 1;
  std::vector<std::uint64_t> seeds;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Strict: unknown fields, missing fields and wrong types are configuration
// errors naming the offending field.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

ProblemConfig parse_problem_config(const nlohmann::json& j);
nlohmann::json to_json(const ProblemConfig& problem);

ExperimentSpec experiment_spec(const RunConfig& config);

// Theorem schedule with overrides applied. The validation report is stored in
// required_relations; any failed relation raises a configuration error.
Schedule resolve_schedule(const RunConfig& config, const Problem& problem);

nlohmann::json to_json(const Schedule& schedule);
nlohmann::json to_json(const CommLedger& ledger);
nlohmann::json to_json(const ProblemConstants& constants);
nlohmann::json to_json(const RateFit& fit);

inline constexpr const char* kCsvHeader =
    "t,grad_l1,grad_l2_sq,est_err_v,est_err_m,x_inf,step_sq,bits_up,bits_down";

// 17 significant digits so a CSV reproduces the doubles exactly.
void write_csv(std::ostream& out, const RunRecord& record);
std::string format_double(double value);

}  // namespace lionlab
