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
#include <string_view>
#include <vector>

#include "lionlab/schedules.hpp"

namespace lionlab {

enum class Algorithm { kLionV1, kLionV2, kDisV1, kDisV2, kCeV1, kCeV2 };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view text);
bool is_centralized(Algorithm a);
bool is_communication_efficient(Algorithm a);
// Theorem whose settings each algorithm is analyzed under by default.
TheoremId default_theorem(Algorithm a);

enum class CompressorKind { kIdentity, kSign, kUnbiasedSign };

// Q1 (node side) or Q2 (server side). A radius of 0 for kUnbiasedSign means
// "role default": G from the problem certificate on nodes, 1 on the server.
struct Compressor {
  CompressorKind kind = CompressorKind::kIdentity;
  double radius = 0.0;

  bool is_sign_type() const { return kind != CompressorKind::kIdentity; }

  friend bool operator==(const Compressor&, const Compressor&) = default;
};

std::string_view to_string(CompressorKind kind);
std::optional<CompressorKind> parse_compressor(std::string_view text);

// Traffic counters. Sign-type payloads cost one bit per coordinate, dense
// payloads one float per coordinate.
struct CommLedger {
  std::uint64_t bits_up = 0;
  std::uint64_t bits_down = 0;
  std::uint64_t floats_up = 0;
  std::uint64_t floats_down = 0;

  friend bool operator==(const CommLedger&, const CommLedger&) = default;
};

// Metrics of step t, all measured against the exact full gradient at x_t.
struct RunRow {
  std::int64_t t = 0;
  double grad_l1 = 0.0;
  double grad_l2_sq = 0.0;
  double est_err_v = 0.0;  // ||mean_j v_t^j - grad f(x_t)||^2
  double est_err_m = 0.0;  // ||mean_j m_t^j - grad f(x_t)||^2
  double x_inf = 0.0;      // ||x_t||_inf
  double step_sq = 0.0;    // ||x_{t+1} - x_t||^2
  std::uint64_t bits_up = 0;    // cumulative after step t
  std::uint64_t bits_down = 0;  // cumulative after step t

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

struct RunSnapshot {
  std::uint64_t problem_seed = 0;
  Schedule schedule;
  Algorithm algorithm = Algorithm::kLionV1;
  Compressor q1;
  Compressor q2;
  std::int64_t T = 0;
  int n = 1;
  int d = 1;
  std::uint64_t run_seed = 0;
};

struct RunSummary {
  double avg_grad_l1 = 0.0;
  double min_grad_l1 = 0.0;
  double wallclock_seconds = 0.0;
};

struct RunRecord {
  RunSnapshot config;
  std::vector<RunRow> series;
  CommLedger ledger;
  RunSummary summary;
};

// Series and ledger equal bit for bit; wallclock is ignored.
bool same_trajectory(const RunRecord& a, const RunRecord& b);

// Fills summary.avg_grad_l1 / min_grad_l1 from the series.
void summarize(RunRecord& record);

}  // namespace lionlab
