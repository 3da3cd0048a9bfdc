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

#include "lionlab/distributed.hpp"

#include <chrono>
#include <sstream>

#include "lionlab/errors.hpp"
#include "lionlab/estimators.hpp"

namespace lionlab {
namespace {

bool is_vr(ClusterVariant v) {
  return v == ClusterVariant::kDisV2 || v == ClusterVariant::kCeV2;
}

bool is_ce(ClusterVariant v) {
  return v == ClusterVariant::kCeV1 || v == ClusterVariant::kCeV2;
}

Vector mean_of(const std::vector<NodeState>& nodes, Vector NodeState::*field) {
  Vector acc((nodes.front().*field).dim());
  for (const auto& node : nodes) {
    const Vector& x = node.*field;
    for (std::size_t k = 0; k < acc.dim(); ++k) acc[k] += x[k];
  }
  const double n = static_cast<double>(nodes.size());
  for (std::size_t k = 0; k < acc.dim(); ++k) acc[k] /= n;
  return acc;
}

// Draws node j's sample for step t and advances its estimators. For the VR
// variants v is corrected only when correct_v is set.
void advance_node(NodeState& node, int j, const ClusterState& s,
                  const Problem& problem, bool correct_v) {
  RandomStream rng = derive_stream(s.seed, static_cast<std::uint64_t>(j),
                                   static_cast<std::uint64_t>(s.t),
                                   StreamPurpose::kSample);
  if (!is_vr(s.variant)) {
    const Vector g = problem.stoch_grad(j, s.x, rng).g;
    node.v = momentum_update(node.m, g, s.hp.beta1);
    node.m = momentum_update(node.m, g, s.hp.beta2);
    return;
  }
  const PairedGrad pg = problem.paired_grad(j, s.x, s.x_prev, rng);
  node.v = correct_v ? storm_update(node.m, pg.g_curr, pg.g_prev, s.hp.beta1)
                     : momentum_update(node.m, pg.g_curr, s.hp.beta1);
  node.m = storm_update(node.m, pg.g_curr, pg.g_prev, s.hp.beta2);
}

void check_nodes_finite(const ClusterState& s) {
  for (const auto& node : s.nodes) {
    detail::require_finite(node.v, s.t, "v^j");
    detail::require_finite(node.m, s.t, "m^j");
  }
}

void finish_step(ClusterState& s, Vector direction) {
  Vector next = detail::decoupled_update(s.x, direction, s.hp);
  detail::require_finite(next, s.t, "x");
  const bool bounded_direction =
      !is_ce(s.variant) || s.q2.is_sign_type();
  if (s.check_invariants && bounded_direction) {
    detail::check_bounded_iterates(s.x, next, s.t, s.horizon, s.hp);
  }
  s.direction = std::move(direction);
  s.x_prev = std::move(s.x);
  s.x = std::move(next);
  ++s.t;
}

}  // namespace

ClusterVariant cluster_variant(Algorithm a) {
  switch (a) {
    case Algorithm::kDisV1: return ClusterVariant::kDisV1;
    case Algorithm::kDisV2: return ClusterVariant::kDisV2;
    case Algorithm::kCeV1: return ClusterVariant::kCeV1;
    case Algorithm::kCeV2: return ClusterVariant::kCeV2;
    default:
      throw Error(ErrorCategory::kConfiguration,
                  std::string(to_string(a)) + " is not a cluster algorithm");
  }
}

Algorithm to_algorithm(ClusterVariant v) {
  switch (v) {
    case ClusterVariant::kDisV1: return Algorithm::kDisV1;
    case ClusterVariant::kDisV2: return Algorithm::kDisV2;
    case ClusterVariant::kCeV1: return Algorithm::kCeV1;
    case ClusterVariant::kCeV2: return Algorithm::kCeV2;
  }
  return Algorithm::kDisV1;
}

Vector ClusterState::mean_v() const { return mean_of(nodes, &NodeState::v); }
Vector ClusterState::mean_m() const { return mean_of(nodes, &NodeState::m); }

Vector apply_compressor(const Compressor& q, double radius, const Vector& v,
                        RandomStream& rng) {
  switch (q.kind) {
    case CompressorKind::kIdentity: return v;
    case CompressorKind::kSign: return sign(v).to_vector();
    case CompressorKind::kUnbiasedSign:
      return unbiased_sign(v, radius, rng).to_vector();
  }
  return v;
}

ClusterState cluster_init(const Problem& problem, const Hyperparams& hp,
                          std::int64_t T, std::int64_t B0,
                          ClusterVariant variant, Compressor q1, Compressor q2,
                          std::uint64_t seed, const LionOptions& options) {
  // v1 variants carry the squared chain; the VR theorems only bound beta1
  // from above.
  detail::check_hyperparams(hp, T, /*squared_chain=*/!is_vr(variant),
                            /*linear_chain=*/false, options.allow_zero_eta);
  if (B0 < 1) {
    throw Error(ErrorCategory::kConfiguration, "hyperparameters violate B0 ≥ 1");
  }

  ClusterState s;
  s.x = detail::initial_point(problem.dim(), hp, options);
  s.x_prev = s.x;
  s.t = 1;
  s.horizon = T;
  s.hp = hp;
  s.variant = variant;
  s.seed = seed;
  s.check_invariants = options.check_invariants;
  if (is_ce(variant)) {
    s.q1 = q1;
    s.q2 = q2;
    s.node_radius = q1.radius > 0.0 ? q1.radius : problem.constants().grad_bound;
    s.server_radius = q2.radius > 0.0 ? q2.radius : 1.0;
  }

  s.nodes.resize(static_cast<std::size_t>(problem.nodes()));
  for (int j = 0; j < problem.nodes(); ++j) {
    RandomStream rng = derive_stream(seed, static_cast<std::uint64_t>(j), 1,
                                     StreamPurpose::kSample);
    NodeState& node = s.nodes[static_cast<std::size_t>(j)];
    node.m = is_vr(variant)
                 ? problem.batch_grad(j, s.x, B0, rng, options.init_sampling)
                 : problem.stoch_grad(j, s.x, rng).g;
    node.v = node.m;
  }
  return s;
}

void dis_lion_step(ClusterState& s, const Problem& problem) {
  if (is_ce(s.variant)) {
    throw Error(ErrorCategory::kConfiguration,
                "dis_lion_step called on a communication-efficient cluster");
  }
  const auto d = s.x.dim();
  const auto n = s.nodes.size();
  if (s.t > 1) {
    for (std::size_t j = 0; j < n; ++j) {
      advance_node(s.nodes[j], static_cast<int>(j), s, problem,
                   /*correct_v=*/true);
    }
  }
  check_nodes_finite(s);

  // Server: v_t = sum_j v_t^j, broadcast sign(v_t).
  Vector total(d);
  for (const auto& node : s.nodes) {
    for (std::size_t k = 0; k < d; ++k) total[k] += node.v[k];
  }
  s.ledger.floats_up += n * d;
  s.ledger.bits_down += n * d;
  Vector direction = sign(total).to_vector();
  s.server_input = std::move(total);
  finish_step(s, std::move(direction));
}

void ce_dis_lion_step(ClusterState& s, const Problem& problem) {
  if (!is_ce(s.variant)) {
    throw Error(ErrorCategory::kConfiguration,
                "ce_dis_lion_step called on a sum-then-sign cluster");
  }
  const auto d = s.x.dim();
  const auto n = s.nodes.size();
  if (s.t > 1) {
    for (std::size_t j = 0; j < n; ++j) {
      advance_node(s.nodes[j], static_cast<int>(j), s, problem,
                   /*correct_v=*/false);
    }
  }
  check_nodes_finite(s);

  Vector total(d);
  for (std::size_t j = 0; j < n; ++j) {
    RandomStream rng = derive_stream(s.seed, static_cast<std::uint64_t>(j),
                                     static_cast<std::uint64_t>(s.t),
                                     StreamPurpose::kNodeCompress);
    Vector sent;
    try {
      sent = apply_compressor(s.q1, s.node_radius, s.nodes[j].v, rng);
    } catch (const RangeViolationError& e) {
      std::ostringstream msg;
      msg << "node " << j << " at step " << s.t << ": " << e.what()
          << " (G certificate too small?)";
      throw RangeViolationError(msg.str(), static_cast<int>(j), s.t);
    }
    for (std::size_t k = 0; k < d; ++k) total[k] += sent[k];
  }
  if (s.q1.is_sign_type()) {
    s.ledger.bits_up += n * d;
  } else {
    s.ledger.floats_up += n * d;
  }

  Vector average(d);
  for (std::size_t k = 0; k < d; ++k) {
    average[k] = total[k] / static_cast<double>(n);
  }
  RandomStream server_rng = derive_stream(
      s.seed, kServerNode, static_cast<std::uint64_t>(s.t),
      StreamPurpose::kServerCompress);
  Vector direction;
  try {
    direction = apply_compressor(s.q2, s.server_radius, average, server_rng);
  } catch (const RangeViolationError& e) {
    std::ostringstream msg;
    msg << "server at step " << s.t << ": " << e.what();
    throw RangeViolationError(msg.str(), -1, s.t);
  }
  if (s.q2.is_sign_type()) {
    s.ledger.bits_down += n * d;
  } else {
    s.ledger.floats_down += n * d;
  }
  s.server_input = std::move(average);
  finish_step(s, std::move(direction));
}

void cluster_step(ClusterState& s, const Problem& problem) {
  if (is_ce(s.variant)) {
    ce_dis_lion_step(s, problem);
  } else {
    dis_lion_step(s, problem);
  }
}

RunRecord cluster_run(const Problem& problem, const Schedule& schedule,
                      std::int64_t T, std::uint64_t seed,
                      ClusterVariant variant, Compressor q1, Compressor q2,
                      const LionOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  ClusterState s = cluster_init(problem, schedule.hyperparams(), T, schedule.B0,
                                variant, q1, q2, seed, options);

  RunRecord record;
  record.config.schedule = schedule;
  record.config.algorithm = to_algorithm(variant);
  record.config.q1 = s.q1;
  record.config.q2 = s.q2;
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
    cluster_step(s, problem);
    row.est_err_v = distance_sq(s.mean_v(), grad);
    row.est_err_m = distance_sq(s.mean_m(), grad);
    row.step_sq = distance_sq(s.x, s.x_prev);
    row.bits_up = s.ledger.bits_up;
    row.bits_down = s.ledger.bits_down;
    record.series.push_back(row);
  }
  record.ledger = s.ledger;
  summarize(record);
  record.summary.wallclock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return record;
}

}  // namespace lionlab
