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

#include "lionlab/record.hpp"

#include <algorithm>
#include <limits>

namespace lionlab {
namespace {

struct AlgorithmInfo {
  Algorithm algorithm;
  std::string_view name;
  TheoremId theorem;
};

constexpr AlgorithmInfo kAlgorithms[] = {
    {Algorithm::kLionV1, "lion-v1", TheoremId::kT1},
    {Algorithm::kLionV2, "lion-v2", TheoremId::kT2},
    {Algorithm::kDisV1, "dis-v1", TheoremId::kT3},
    {Algorithm::kDisV2, "dis-v2", TheoremId::kT4},
    {Algorithm::kCeV1, "ce-v1", TheoremId::kT7},
    {Algorithm::kCeV2, "ce-v2", TheoremId::kT8},
};

}  // namespace

std::string_view to_string(Algorithm a) {
  for (const auto& info : kAlgorithms) {
    if (info.algorithm == a) return info.name;
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (const auto& info : kAlgorithms) {
    if (info.name == text) return info.algorithm;
  }
  return std::nullopt;
}

bool is_centralized(Algorithm a) {
  return a == Algorithm::kLionV1 || a == Algorithm::kLionV2;
}

bool is_communication_efficient(Algorithm a) {
  return a == Algorithm::kCeV1 || a == Algorithm::kCeV2;
}

TheoremId default_theorem(Algorithm a) {
  for (const auto& info : kAlgorithms) {
    if (info.algorithm == a) return info.theorem;
  }
  return TheoremId::kT1;
}

std::string_view to_string(CompressorKind kind) {
  switch (kind) {
    case CompressorKind::kIdentity: return "identity";
    case CompressorKind::kSign: return "sign";
    case CompressorKind::kUnbiasedSign: return "unbiased-sign";
  }
  return "?";
}

std::optional<CompressorKind> parse_compressor(std::string_view text) {
  if (text == "identity") return CompressorKind::kIdentity;
  if (text == "sign") return CompressorKind::kSign;
  if (text == "unbiased-sign") return CompressorKind::kUnbiasedSign;
  return std::nullopt;
}

bool same_trajectory(const RunRecord& a, const RunRecord& b) {
  return a.series == b.series && a.ledger == b.ledger;
}

void summarize(RunRecord& record) {
  if (record.series.empty()) {
    record.summary.avg_grad_l1 = 0.0;
    record.summary.min_grad_l1 = 0.0;
    return;
  }
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& row : record.series) {
    sum += row.grad_l1;
    lo = std::min(lo, row.grad_l1);
  }
  record.summary.avg_grad_l1 = sum / static_cast<double>(record.series.size());
  record.summary.min_grad_l1 = lo;
}

}  // namespace lionlab
