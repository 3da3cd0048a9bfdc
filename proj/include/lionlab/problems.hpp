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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lionlab/random.hpp"
#include "lionlab/vector.hpp"

namespace lionlab {

struct ProblemConfig {
  int dim = 20;
  int nodes = 1;
  int samples_per_node = 256;
  double heterogeneity = 0.0;
  double nonconvex_reg = 0.1;
  std::uint64_t seed = 1;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

// Certified assumption constants.
//   smoothness: per-sample gradient Lipschitz constant (also bounds each f_j)
//   noise: sigma, stochastic-gradient noise bound
//   grad_bound: G, sup of ||grad f_j(x; xi)||_inf
//   f_star: a certified lower bound on inf f
//   delta_f: f(x_1) - f_star at x_1 = 0
struct ProblemConstants {
  double smoothness = 0.0;
  double noise = 0.0;
  double grad_bound = 0.0;
  double f_star = 0.0;
  double delta_f = 0.0;
};

// One node's finite sample set. Features are stored row-major.
struct Shard {
  int node_id = 0;
  std::vector<double> features;
  std::vector<std::int8_t> labels;
};

struct StochGrad {
  Vector g;
  std::size_t sample_id = 0;
};

// Two gradients evaluated on one sample at x_t and x_{t-1}.
struct PairedGrad {
  Vector g_curr;
  Vector g_prev;
  std::size_t sample_id = 0;
};

enum class SamplingMode { kWithReplacement, kWithoutReplacement };

// Heterogeneous finite-sum binary logistic regression with the bounded
// nonconvex regularizer alpha * sum_i x_i^2 / (1 + x_i^2):
//
//   f_j(x; i) = log(1 + exp(-y_i <a_i, x>)) + alpha * sum_k x_k^2 / (1 + x_k^2)
//   f(x)      = (1/n) sum_j (1/N) sum_i f_j(x; i)
//
// Immutable after construction; safe to share across threads.
class Problem {
 public:
  // Builds from explicit shards. Every feature must satisfy |a| <= 1 and every
  // label must be +-1. Constants are certified from the data.
  Problem(int dim, std::vector<Shard> shards, double nonconvex_reg,
          std::uint64_t cert_seed = 0);

  int dim() const noexcept { return dim_; }
  int nodes() const noexcept { return static_cast<int>(shards_.size()); }
  int samples_per_node() const noexcept { return samples_per_node_; }
  double nonconvex_reg() const noexcept { return alpha_; }
  const ProblemConstants& constants() const noexcept { return constants_; }
  const Shard& shard(int node) const { return shards_.at(node); }

  double value(const Vector& x) const;
  double node_value(int node, const Vector& x) const;

  // Exact grad f(x) = (1/n) sum_j grad f_j(x).
  Vector full_grad(const Vector& x) const;
  // Exact grad f_j(x), the mean of the shard's per-sample gradients summed in
  // index order.
  Vector node_grad(int node, const Vector& x) const;
  Vector sample_grad(int node, std::size_t sample, const Vector& x) const;

  StochGrad stoch_grad(int node, const Vector& x, RandomStream& rng) const;
  PairedGrad paired_grad(int node, const Vector& x_curr, const Vector& x_prev,
                         RandomStream& rng) const;
  Vector batch_grad(int node, const Vector& x, std::int64_t batch,
                    RandomStream& rng,
                    SamplingMode mode = SamplingMode::kWithReplacement) const;

  // Noise level (1/N) sum_i ||g_i(x) - grad f_j(x)||^2 maximized over nodes,
  // by enumeration of the shards.
  double noise_sq_at(const Vector& x) const;

 private:
  void check_node(int node) const;
  void check_point(const Vector& x) const;
  const double* row(int node, std::size_t sample) const;
  // Adds the logistic part of sample i's gradient into acc.
  void accumulate_logistic(int node, std::size_t sample, const Vector& x,
                           double scale, Vector& acc) const;
  void add_regularizer_grad(const Vector& x, Vector& acc) const;
  void certify(std::uint64_t seed);

  int dim_;
  int samples_per_node_;
  double alpha_;
  std::vector<Shard> shards_;
  ProblemConstants constants_;
};

// Side length of the box ||x||_inf <= kCertifiedRadius on which sigma is
// certified by sampling.
inline constexpr double kCertifiedRadius = 10.0;

Problem make_logreg_problem(const ProblemConfig& config);

// Free-function forms of the oracle calls.
inline StochGrad stoch_grad(const Problem& p, int node, const Vector& x,
                            RandomStream& rng) {
  return p.stoch_grad(node, x, rng);
}
inline PairedGrad paired_grad(const Problem& p, int node, const Vector& x_curr,
                              const Vector& x_prev, RandomStream& rng) {
  return p.paired_grad(node, x_curr, x_prev, rng);
}
inline Vector batch_grad(const Problem& p, int node, const Vector& x,
                         std::int64_t batch, RandomStream& rng,
                         SamplingMode mode = SamplingMode::kWithReplacement) {
  return p.batch_grad(node, x, batch, rng, mode);
}

}  // namespace lionlab
