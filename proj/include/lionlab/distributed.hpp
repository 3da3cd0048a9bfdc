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
#include <vector>

#include "lionlab/lion.hpp"
#include "lionlab/problems.hpp"
#include "lionlab/record.hpp"
#include "lionlab/vector.hpp"

namespace lionlab {

// DisV1/DisV2: sum-then-sign parameter server. CeV1/CeV2: nodes upload
// Q1(v^j), the server averages and broadcasts Q2(average).
enum class ClusterVariant { kDisV1, kDisV2, kCeV1, kCeV2 };

ClusterVariant cluster_variant(Algorithm a);
Algorithm to_algorithm(ClusterVariant v);

struct NodeState {
  Vector m;  // m_{t-1}^j before a step, m_t^j after it
  Vector v;  // v_t^j of the most recent step
};

struct ClusterState {
  Vector x;  // replicated model x_t
  Vector x_prev;
  std::vector<NodeState> nodes;
  std::int64_t t = 1;
  std::int64_t horizon = 1;
  Hyperparams hp;
  ClusterVariant variant = ClusterVariant::kDisV1;
  Compressor q1;
  Compressor q2;
  double node_radius = 0.0;    // R used by Q1 when it is unbiased-sign
  double server_radius = 1.0;  // R used by Q2 when it is unbiased-sign
  CommLedger ledger;
  std::uint64_t seed = 0;
  bool check_invariants = kCheckInvariantsByDefault;
  // What the server aggregated (sum for Dis, average for Ce) and the
  // direction it broadcast at the last step.
  Vector server_input;
  Vector direction;

  Vector mean_v() const;
  Vector mean_m() const;
};

// Per-node initialization v_1^j = m_1^j from one sample (V1) or a B0 batch
// (V2). q1/q2 are ignored by the Dis variants. Unbiased-sign compressors with
// radius 0 take G from the problem (Q1) and 1 (Q2).
ClusterState cluster_init(const Problem& problem, const Hyperparams& hp,
                          std::int64_t T, std::int64_t B0,
                          ClusterVariant variant, Compressor q1, Compressor q2,
                          std::uint64_t seed, const LionOptions& options = {});

// Sum-then-sign step: every node forms v_t^j, m_t^j (DisV2 applies the STORM
// correction to both), the server sums, broadcasts the sign and every replica
// applies the decoupled update. Ledger: n*d floats up, n*d bits down.
void dis_lion_step(ClusterState& state, const Problem& problem);

// Communication-efficient step: plain momentum for v_t^j in both variants
// (CeV2 corrects m only), uplink Q1(v_t^j), server average, downlink Q2.
void ce_dis_lion_step(ClusterState& state, const Problem& problem);

void cluster_step(ClusterState& state, const Problem& problem);

RunRecord cluster_run(const Problem& problem, const Schedule& schedule,
                      std::int64_t T, std::uint64_t seed,
                      ClusterVariant variant, Compressor q1 = {},
                      Compressor q2 = {}, const LionOptions& options = {});

// Applies a compressor. Identity returns v unchanged.
Vector apply_compressor(const Compressor& q, double radius, const Vector& v,
                        RandomStream& rng);

}  // namespace lionlab
