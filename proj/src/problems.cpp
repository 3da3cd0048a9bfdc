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

#include "lionlab/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lionlab/errors.hpp"

namespace lionlab {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// Number of random reference points (besides x = 0) used to certify sigma.
constexpr int kNoiseReferencePoints = 32;

}  // namespace

Problem::Problem(int dim, std::vector<Shard> shards, double nonconvex_reg,
                 std::uint64_t cert_seed)
    : dim_(dim), samples_per_node_(0), alpha_(nonconvex_reg),
      shards_(std::move(shards)) {
  if (dim_ < 1) {
    throw Error(ErrorCategory::kInvalidParameter, "problem: dim must be >= 1");
  }
  if (shards_.empty()) {
    throw Error(ErrorCategory::kInvalidParameter,
                "problem: at least one shard is required");
  }
  if (!(alpha_ >= 0.0) || !std::isfinite(alpha_)) {
    throw Error(ErrorCategory::kInvalidParameter,
                "problem: nonconvex_reg must be finite and >= 0");
  }
  samples_per_node_ = static_cast<int>(shards_.front().labels.size());
  for (std::size_t j = 0; j < shards_.size(); ++j) {
    const Shard& s = shards_[j];
    if (s.labels.empty() ||
        s.labels.size() != static_cast<std::size_t>(samples_per_node_) ||
        s.features.size() != s.labels.size() * static_cast<std::size_t>(dim_)) {
      throw Error(ErrorCategory::kShape,
                  "problem: every shard needs samples_per_node rows of dim "
                  "features");
    }
    for (double a : s.features) {
      if (!(std::abs(a) <= 1.0)) {
        throw Error(ErrorCategory::kInvalidParameter,
                    "problem: features must satisfy |a| <= 1");
      }
    }
    for (auto y : s.labels) {
      if (y != 1 && y != -1) {
        throw Error(ErrorCategory::kInvalidParameter,
                    "problem: labels must be +1 or -1");
      }
    }
  }
  certify(cert_seed);
}

void Problem::check_node(int node) const {
  if (node < 0 || node >= nodes()) {
    std::ostringstream msg;
    msg << "problem: node id " << node << " outside [0, " << nodes() << ")";
    throw Error(ErrorCategory::kInvalidParameter, msg.str());
  }
}

void Problem::check_point(const Vector& x) const {
  if (x.dim() != static_cast<std::size_t>(dim_)) {
    std::ostringstream msg;
    msg << "problem: point has dim " << x.dim() << ", expected " << dim_;
    throw Error(ErrorCategory::kShape, msg.str());
  }
  if (!x.all_finite()) {
    throw Error(ErrorCategory::kInvalidInput, "problem: non-finite point");
  }
}

const double* Problem::row(int node, std::size_t sample) const {
  return shards_[node].features.data() + sample * static_cast<std::size_t>(dim_);
}

void Problem::add_regularizer_grad(const Vector& x, Vector& acc) const {
  for (int k = 0; k < dim_; ++k) {
    const double q = 1.0 + x[k] * x[k];
    acc[k] = 2.0 * alpha_ * x[k] / (q * q);
  }
}

void Problem::accumulate_logistic(int node, std::size_t sample, const Vector& x,
                                  double scale, Vector& acc) const {
  const double* a = row(node, sample);
  const double y = shards_[node].labels[sample];
  double margin = 0.0;
  for (int k = 0; k < dim_; ++k) margin += a[k] * x[k];
  const double coef = -y * sigmoid(-y * margin) * scale;
  for (int k = 0; k < dim_; ++k) acc[k] += coef * a[k];
}

Vector Problem::sample_grad(int node, std::size_t sample,
                            const Vector& x) const {
  check_node(node);
  check_point(x);
  Vector g(dim_);
  add_regularizer_grad(x, g);
  accumulate_logistic(node, sample, x, 1.0, g);
  return g;
}

Vector Problem::node_grad(int node, const Vector& x) const {
  check_node(node);
  check_point(x);
  Vector reg(dim_);
  add_regularizer_grad(x, reg);
  Vector acc(dim_);
  Vector g(dim_);
  for (std::size_t i = 0; i < static_cast<std::size_t>(samples_per_node_);
       ++i) {
    g = reg;
    accumulate_logistic(node, i, x, 1.0, g);
    for (int k = 0; k < dim_; ++k) acc[k] += g[k];
  }
  for (int k = 0; k < dim_; ++k) acc[k] /= samples_per_node_;
  return acc;
}

Vector Problem::full_grad(const Vector& x) const {
  Vector acc(dim_);
  for (int j = 0; j < nodes(); ++j) {
    const Vector gj = node_grad(j, x);
    for (int k = 0; k < dim_; ++k) acc[k] += gj[k];
  }
  for (int k = 0; k < dim_; ++k) acc[k] /= nodes();
  return acc;
}

double Problem::node_value(int node, const Vector& x) const {
  check_node(node);
  check_point(x);
  double loss = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(samples_per_node_);
       ++i) {
    const double* a = row(node, i);
    double margin = 0.0;
    for (int k = 0; k < dim_; ++k) margin += a[k] * x[k];
    loss += softplus(-shards_[node].labels[i] * margin);
  }
  double reg = 0.0;
  for (int k = 0; k < dim_; ++k) reg += x[k] * x[k] / (1.0 + x[k] * x[k]);
  return loss / samples_per_node_ + alpha_ * reg;
}

double Problem::value(const Vector& x) const {
  double acc = 0.0;
  for (int j = 0; j < nodes(); ++j) acc += node_value(j, x);
  return acc / nodes();
}

StochGrad Problem::stoch_grad(int node, const Vector& x,
                              RandomStream& rng) const {
  check_node(node);
  const std::size_t id = rng.index(static_cast<std::size_t>(samples_per_node_));
  return {sample_grad(node, id, x), id};
}

PairedGrad Problem::paired_grad(int node, const Vector& x_curr,
                                const Vector& x_prev, RandomStream& rng) const {
  check_node(node);
  const std::size_t id = rng.index(static_cast<std::size_t>(samples_per_node_));
  return {sample_grad(node, id, x_curr), sample_grad(node, id, x_prev), id};
}

Vector Problem::batch_grad(int node, const Vector& x, std::int64_t batch,
                           RandomStream& rng, SamplingMode mode) const {
  check_node(node);
  check_point(x);
  if (batch < 1) {
    throw Error(ErrorCategory::kInvalidParameter,
                "batch_grad: batch size must be >= 1");
  }
  const auto n_samples = static_cast<std::size_t>(samples_per_node_);
  std::vector<std::size_t> ids;
  ids.reserve(static_cast<std::size_t>(batch));
  if (mode == SamplingMode::kWithReplacement) {
    for (std::int64_t b = 0; b < batch; ++b) ids.push_back(rng.index(n_samples));
  } else {
    if (static_cast<std::size_t>(batch) > n_samples) {
      throw Error(ErrorCategory::kInvalidParameter,
                  "batch_grad: batch exceeds shard size without replacement");
    }
    std::vector<std::size_t> perm(n_samples);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (static_cast<std::size_t>(batch) < n_samples) {
      // Partial Fisher-Yates; a full pass keeps index order.
      for (std::size_t b = 0; b < static_cast<std::size_t>(batch); ++b) {
        std::swap(perm[b], perm[b + rng.index(n_samples - b)]);
      }
    }
    ids.assign(perm.begin(), perm.begin() + batch);
  }

  Vector reg(dim_);
  add_regularizer_grad(x, reg);
  Vector acc(dim_);
  Vector g(dim_);
  for (std::size_t id : ids) {
    g = reg;
    accumulate_logistic(node, id, x, 1.0, g);
    for (int k = 0; k < dim_; ++k) acc[k] += g[k];
  }
  for (int k = 0; k < dim_; ++k) acc[k] /= static_cast<double>(batch);
  return acc;
}

double Problem::noise_sq_at(const Vector& x) const {
  double worst = 0.0;
  for (int j = 0; j < nodes(); ++j) {
    const Vector mean = node_grad(j, x);
    double total = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(samples_per_node_);
         ++i) {
      total += distance_sq(sample_grad(j, i, x), mean);
    }
    worst = std::max(worst, total / samples_per_node_);
  }
  return worst;
}

void Problem::certify(std::uint64_t seed) {
  // Per-sample logistic Hessian is s'(.) a a^T with s' <= 1/4, so
  // 0.25 * max ||a_i||^2 bounds every per-sample Lipschitz constant and the
  // top eigenvalue of each shard's second moment. The regularizer's second
  // derivative is bounded by 2 alpha.
  double max_row_sq = 0.0;
  for (int j = 0; j < nodes(); ++j) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(samples_per_node_);
         ++i) {
      const double* a = row(j, i);
      double s = 0.0;
      for (int k = 0; k < dim_; ++k) s += a[k] * a[k];
      max_row_sq = std::max(max_row_sq, s);
    }
  }
  constants_.smoothness = 0.25 * max_row_sq + 2.0 * alpha_;
  // Logistic part: ||a||_inf <= 1. Regularizer: 2 alpha * 3 sqrt(3) / 16 < 2 alpha.
  constants_.grad_bound = 1.0 + 2.0 * alpha_;

  // sigma: enumerate the shards at x = 0 and at random points of the
  // certified box, inflate by 2, and cap by the global bound max ||a_i||
  // (the regularizer cancels in the centered noise).
  double noise_sq = noise_sq_at(Vector(dim_));
  RandomStream rng = derive_stream(seed, 0, 0, StreamPurpose::kAux);
  for (int r = 0; r < kNoiseReferencePoints; ++r) {
    Vector x(dim_);
    for (int k = 0; k < dim_; ++k) {
      x[k] = kCertifiedRadius * (2.0 * rng.uniform() - 1.0);
    }
    noise_sq = std::max(noise_sq, noise_sq_at(x));
  }
  constants_.noise = std::min(2.0 * std::sqrt(noise_sq), std::sqrt(max_row_sq));

  // Both loss terms are nonnegative, so inf f >= 0.
  constants_.f_star = 0.0;
  constants_.delta_f = value(Vector(dim_)) - constants_.f_star;
}

Problem make_logreg_problem(const ProblemConfig& config) {
  if (config.dim < 1 || config.nodes < 1 || config.samples_per_node < 1) {
    throw Error(ErrorCategory::kInvalidParameter,
                "make_logreg_problem: d, n and samples_per_node must be >= 1");
  }
  if (!(config.heterogeneity >= 0.0) || !std::isfinite(config.heterogeneity)) {
    throw Error(ErrorCategory::kInvalidParameter,
                "make_logreg_problem: heterogeneity must be finite and >= 0");
  }
  const auto d = static_cast<std::size_t>(config.dim);

  // Shared labeling model.
  RandomStream model_rng =
      derive_stream(config.seed, kServerNode, 0, StreamPurpose::kProblemGen);
  std::vector<double> w_star(d);
  for (double& w : w_star) w = 2.0 * (2.0 * model_rng.uniform() - 1.0);

  std::vector<Shard> shards;
  shards.reserve(static_cast<std::size_t>(config.nodes));
  for (int j = 0; j < config.nodes; ++j) {
    RandomStream rng = derive_stream(config.seed, static_cast<std::uint64_t>(j),
                                     0, StreamPurpose::kProblemGen);
    // Node-specific unit direction u_j for the mean shift.
    std::vector<double> shift(d);
    double norm_sq = 0.0;
    for (double& u : shift) {
      u = rng.normal();
      norm_sq += u * u;
    }
    const double scale =
        norm_sq > 0.0 ? config.heterogeneity / std::sqrt(norm_sq) : 0.0;
    for (double& u : shift) u *= scale;

    Shard shard;
    shard.node_id = j;
    shard.features.resize(d * static_cast<std::size_t>(config.samples_per_node));
    shard.labels.resize(static_cast<std::size_t>(config.samples_per_node));
    for (int i = 0; i < config.samples_per_node; ++i) {
      double margin = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double a =
            std::clamp(shift[k] + (2.0 * rng.uniform() - 1.0), -1.0, 1.0);
        shard.features[static_cast<std::size_t>(i) * d + k] = a;
        margin += w_star[k] * a;
      }
      shard.labels[static_cast<std::size_t>(i)] =
          rng.uniform() < sigmoid(margin) ? 1 : -1;
    }
    shards.push_back(std::move(shard));
  }
  return Problem(config.dim, std::move(shards), config.nonconvex_reg,
                 config.seed);
}

}  // namespace lionlab
