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

#include "lionlab/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "lionlab/distributed.hpp"
#include "lionlab/errors.hpp"
#include "lionlab/harness.hpp"
#include "lionlab/lion.hpp"
#include "lionlab/problems.hpp"
#include "lionlab/random.hpp"
#include "lionlab/schedules.hpp"
#include "lionlab/vector.hpp"

namespace lionlab {
namespace {

using nlohmann::json;

constexpr std::uint64_t kSuiteSeed = 20260417;

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

Vector box_point(int dim, double radius, RandomStream& rng) {
  Vector x(dim);
  for (int k = 0; k < dim; ++k) x[k] = radius * (2.0 * rng.uniform() - 1.0);
  return x;
}

bool bitwise_equal(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (std::bit_cast<std::uint64_t>(a[k]) != std::bit_cast<std::uint64_t>(b[k])) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// lemma1

struct Lemma1Case {
  Algorithm algorithm = Algorithm::kLionV1;
  int d = 1;
  int n = 1;
  std::int64_t T = 10;
  double eta = 0.5;
  double beta2 = 0.5;
  std::int64_t B0 = 1;
  CompressorKind q1 = CompressorKind::kIdentity;
  CompressorKind q2 = CompressorKind::kSign;
  std::uint64_t seed = 0;
};

json to_json(const Lemma1Case& c) {
  return {{"algorithm", std::string(to_string(c.algorithm))},
          {"d", c.d},
          {"n", c.n},
          {"T", c.T},
          {"eta", c.eta},
          {"beta2", c.beta2},
          {"B0", c.B0},
          {"q1", std::string(to_string(c.q1))},
          {"q2", std::string(to_string(c.q2))},
          {"seed", c.seed}};
}

Lemma1Case random_case(RandomStream& rng, std::uint64_t index) {
  static constexpr Algorithm kAlgorithms[] = {
      Algorithm::kLionV1, Algorithm::kLionV2, Algorithm::kDisV1,
      Algorithm::kDisV2,  Algorithm::kCeV1,   Algorithm::kCeV2};
  Lemma1Case c;
  c.algorithm = kAlgorithms[rng.index(6)];
  c.d = 1 + static_cast<int>(rng.index(64));
  c.n = is_centralized(c.algorithm) ? 1 : 1 + static_cast<int>(rng.index(4));
  c.T = 10 + static_cast<std::int64_t>(rng.index(1991));
  do {
    c.eta = rng.uniform();
  } while (c.eta <= 0.0);
  c.beta2 = std::max(rng.uniform(), 1e-3);
  c.B0 = 1 + static_cast<std::int64_t>(rng.index(8));
  if (c.algorithm == Algorithm::kCeV1) {
    c.q1 = static_cast<CompressorKind>(rng.index(3));
  } else if (c.algorithm == Algorithm::kCeV2) {
    // The STORM estimator can leave [-G, G], so no radius-G sign here.
    c.q1 = static_cast<CompressorKind>(rng.index(2));
  }
  // Q2 has to emit signs for the bound; unbiased-sign(1) needs an input
  // average of signs.
  c.q2 = (c.q1 != CompressorKind::kIdentity && rng.index(2) == 1)
             ? CompressorKind::kUnbiasedSign
             : CompressorKind::kSign;
  c.seed = index;
  return c;
}

PropertyResult check_lemma1_case(const Lemma1Case& c, std::uint64_t index) {
  PropertyResult result;
  result.name = "config " + std::to_string(index) + " (" +
                std::string(to_string(c.algorithm)) + ")";
  ProblemConfig pc;
  pc.dim = c.d;
  pc.nodes = c.n;
  pc.samples_per_node = 16;
  pc.heterogeneity = 0.5;
  pc.nonconvex_reg = 0.1;
  pc.seed = 1000 + index;
  const Problem problem = make_logreg_problem(pc);

  Schedule schedule;
  schedule.theorem = default_theorem(c.algorithm);
  schedule.eta = c.eta;
  schedule.lambda = lambda_cap(c.eta, c.T);
  schedule.beta2 = c.beta2;
  schedule.beta1 = std::sqrt(c.beta2);
  schedule.B0 = c.B0;

  ExperimentSpec spec;
  spec.problem = pc;
  spec.algorithm = c.algorithm;
  spec.q1 = {c.q1, 0.0};
  spec.q2 = {c.q2, 0.0};
  LionOptions options;
  options.check_invariants = false;  // checked independently below

  const RunRecord record = run_once(problem, spec, schedule, c.T, c.seed, options);
  const double step_bound = 4.0 * c.eta * c.eta * c.d;
  for (const auto& row : record.series) {
    const double iterate_bound = c.eta * static_cast<double>(row.t);
    if (row.x_inf > iterate_bound || row.step_sq > step_bound) {
      result.passed = false;
      result.detail = "bound violated at t = " + std::to_string(row.t);
      result.counterexample = to_json(c);
      result.counterexample["t"] = row.t;
      result.counterexample["x_inf"] = row.x_inf;
      result.counterexample["eta_t"] = iterate_bound;
      result.counterexample["step_sq"] = row.step_sq;
      result.counterexample["4_eta_sq_d"] = step_bound;
      return result;
    }
  }
  result.passed = true;
  result.detail = "d=" + std::to_string(c.d) + " n=" + std::to_string(c.n) +
                  " T=" + std::to_string(c.T) + " eta=" + fmt(c.eta) +
                  ": all steps bounded";
  return result;
}

SuiteReport lemma1_suite() {
  SuiteReport report{"lemma1", {}};
  RandomStream rng = derive_stream(kSuiteSeed, 0, 0, StreamPurpose::kAux);
  constexpr std::uint64_t kConfigs = 100;
  std::vector<Lemma1Case> cases;
  for (std::uint64_t i = 0; i < kConfigs; ++i) cases.push_back(random_case(rng, i));
  report.properties.resize(kConfigs);
  parallel_for(kConfigs, [&](std::size_t i) {
    report.properties[i] = check_lemma1_case(cases[i], i);
  });
  return report;
}

// ---------------------------------------------------------------------------
// unbiased-sign

SuiteReport unbiased_sign_suite() {
  SuiteReport report{"unbiased-sign", {}};
  struct Case {
    double radius;
    Vector v;
  };
  const std::vector<Case> cases = {
      {1.0, {-0.9, -0.6, -0.3, 0.0, 0.1, 0.4, 0.7, 0.95}},
      {1.0, {0.05, -0.05, 0.5, -0.5, 0.25, -0.25, 0.8, -0.8}},
      {1.2, {1.1, -1.1, 0.6, -0.6, 0.0, 0.3, -0.9, 0.2}},
      {2.0, {1.5, -1.5, 0.5, -0.5, 1.9, -1.9, 0.0, 1.0}},
      {0.5, {0.49, -0.49, 0.125, -0.125, 0.0, 0.3, -0.2, 0.45}},
  };
  constexpr int kDraws = 1'000'000;
  constexpr double kTol = 5e-3;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [radius, v] = cases[c];
    RandomStream rng = derive_stream(kSuiteSeed, 1, c, StreamPurpose::kAux);
    std::vector<std::int64_t> sums(v.dim(), 0);
    for (int i = 0; i < kDraws; ++i) {
      const SignVector s = unbiased_sign(v, radius, rng);
      for (std::size_t k = 0; k < v.dim(); ++k) sums[k] += s[k];
    }
    PropertyResult p;
    p.name = "mean matches v/R (vector " + std::to_string(c) + ")";
    double worst = 0.0;
    std::size_t worst_k = 0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
      const double err =
          std::abs(static_cast<double>(sums[k]) / kDraws - v[k] / radius);
      if (err > worst) {
        worst = err;
        worst_k = k;
      }
    }
    p.passed = worst <= kTol;
    p.detail = "max |mean - v/R| = " + fmt(worst) + " over " +
               std::to_string(kDraws) + " draws";
    if (!p.passed) {
      p.counterexample = {{"radius", radius},
                          {"v", v.raw()},
                          {"coordinate", worst_k},
                          {"error", worst}};
    }
    report.properties.push_back(std::move(p));
  }

  PropertyResult boundary;
  boundary.name = "boundary inputs are deterministic";
  boundary.passed = true;
  const double radius = 1.5;
  const Vector edge = {radius, -radius, radius, -radius,
                       radius, -radius, radius, -radius};
  RandomStream rng = derive_stream(kSuiteSeed, 2, 0, StreamPurpose::kAux);
  for (int i = 0; i < 100'000 && boundary.passed; ++i) {
    const SignVector s = unbiased_sign(edge, radius, rng);
    for (std::size_t k = 0; k < edge.dim(); ++k) {
      const int expected = edge[k] > 0 ? 1 : -1;
      if (s[k] != expected) {
        boundary.passed = false;
        boundary.counterexample = {{"draw", i}, {"coordinate", k},
                                   {"value", edge[k]}, {"output", s[k]}};
        break;
      }
    }
  }
  boundary.detail = boundary.passed ? "v = +-R gave sign(v) on 100000 draws"
                                    : "random output at v = +-R";
  report.properties.push_back(std::move(boundary));
  return report;
}

// ---------------------------------------------------------------------------
// reduction

struct ReductionCase {
  std::string name;
  LionVariant lion;
  ClusterVariant cluster;
  Compressor q1;
  Compressor q2;
};

// Steps both optimizers from the same seed and compares x after every step.
std::int64_t first_mismatch(const Problem& problem, const Schedule& schedule,
                            std::int64_t T, std::uint64_t seed,
                            const ReductionCase& c) {
  LionOptions options;
  options.check_invariants = false;
  LionState lion = lion_init(problem, schedule.hyperparams(), T, schedule.B0,
                             c.lion, seed, options);
  ClusterState cluster =
      cluster_init(problem, schedule.hyperparams(), T, schedule.B0, c.cluster,
                   c.q1, c.q2, seed, options);
  if (!bitwise_equal(lion.x, cluster.x)) return 1;
  for (std::int64_t t = 1; t <= T; ++t) {
    lion_step(lion, problem);
    cluster_step(cluster, problem);
    if (!bitwise_equal(lion.x, cluster.x)) return t + 1;
  }
  return 0;
}

SuiteReport reduction_suite() {
  SuiteReport report{"reduction", {}};
  ProblemConfig pc;
  pc.dim = 10;
  pc.nodes = 1;
  pc.samples_per_node = 64;
  pc.seed = 7;
  const Problem problem = make_logreg_problem(pc);
  constexpr std::int64_t T = 500;
  const auto inputs = schedule_inputs(problem, T);
  const Schedule s1 = schedule_for(TheoremId::kT1, inputs);
  const Schedule s2 = schedule_for(TheoremId::kT2, inputs);

  const Compressor identity{CompressorKind::kIdentity, 0.0};
  const Compressor sign{CompressorKind::kSign, 0.0};
  const std::vector<std::pair<ReductionCase, const Schedule*>> cases = {
      {{"dis-v1 (n=1) = lion-v1", LionVariant::kV1, ClusterVariant::kDisV1, {}, {}},
       &s1},
      {{"ce-v1 (n=1, q1=identity, q2=sign) = lion-v1", LionVariant::kV1,
        ClusterVariant::kCeV1, identity, sign},
       &s1},
      {{"ce-v1 (n=1, q1=sign, q2=identity) = lion-v1", LionVariant::kV1,
        ClusterVariant::kCeV1, sign, identity},
       &s1},
      {{"ce-v2 (n=1, q1=identity, q2=sign) = lion-v2", LionVariant::kV2,
        ClusterVariant::kCeV2, identity, sign},
       &s2},
      {{"dis-v2 (n=1) = lion-v2", LionVariant::kV2, ClusterVariant::kDisV2, {}, {}},
       &s2},
  };
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  for (const auto& [c, schedule] : cases) {
    PropertyResult p;
    p.name = c.name;
    p.passed = true;
    for (auto seed : seeds) {
      const std::int64_t bad = first_mismatch(problem, *schedule, T, seed, c);
      if (bad != 0) {
        p.passed = false;
        p.detail = "x differs first at t = " + std::to_string(bad);
        p.counterexample = {{"seed", seed}, {"T", T}, {"first_mismatch_t", bad}};
        break;
      }
    }
    if (p.passed) {
      p.detail = "x bitwise equal over T = 500 for " +
                 std::to_string(seeds.size()) + " seeds";
    }
    report.properties.push_back(std::move(p));
  }
  return report;
}

// ---------------------------------------------------------------------------
// bits

SuiteReport bits_suite() {
  SuiteReport report{"bits", {}};
  struct Size {
    std::int64_t T;
    int n;
    int d;
  };
  const Size sizes[] = {{100, 4, 10}, {50, 16, 32}};
  for (const auto& size : sizes) {
    ProblemConfig pc;
    pc.dim = size.d;
    pc.nodes = size.n;
    pc.samples_per_node = 8;
    pc.seed = 11;
    const Problem problem = make_logreg_problem(pc);
    Schedule schedule;
    schedule.eta = 0.01;
    schedule.lambda = lambda_cap(schedule.eta, size.T);
    schedule.beta2 = 0.25;
    schedule.beta1 = 0.5;
    schedule.B0 = 1;
    const std::uint64_t tnd = static_cast<std::uint64_t>(size.T) * size.n * size.d;
    const std::string dims = "(T=" + std::to_string(size.T) +
                             ", n=" + std::to_string(size.n) +
                             ", d=" + std::to_string(size.d) + ")";

    struct Case {
      ClusterVariant variant;
      Compressor q1;
      Compressor q2;
      CommLedger expected;
      std::string unit_up;
    };
    const std::vector<Case> cases = {
        {ClusterVariant::kDisV1, {}, {}, {0, tnd, tnd, 0}, "floats"},
        {ClusterVariant::kDisV2, {}, {}, {0, tnd, tnd, 0}, "floats"},
        {ClusterVariant::kCeV1,
         {CompressorKind::kUnbiasedSign, 0.0},
         {CompressorKind::kUnbiasedSign, 0.0},
         {tnd, tnd, 0, 0},
         "bits"},
        {ClusterVariant::kCeV1,
         {CompressorKind::kSign, 0.0},
         {CompressorKind::kSign, 0.0},
         {tnd, tnd, 0, 0},
         "bits"},
        {ClusterVariant::kCeV2,
         {CompressorKind::kSign, 0.0},
         {CompressorKind::kUnbiasedSign, 0.0},
         {tnd, tnd, 0, 0},
         "bits"},
    };
    for (const auto& c : cases) {
      LionOptions options;
      options.check_invariants = false;
      const RunRecord record =
          cluster_run(problem, schedule, size.T, 1, c.variant, c.q1, c.q2, options);
      PropertyResult p;
      p.name = std::string(to_string(to_algorithm(c.variant)));
      if (c.q1.kind != CompressorKind::kIdentity || c.q2.kind != CompressorKind::kIdentity) {
        p.name += " q1=" + std::string(to_string(c.q1.kind)) +
                  " q2=" + std::string(to_string(c.q2.kind));
      }
      p.name += " " + dims;
      p.passed = record.ledger == c.expected &&
                 record.series.back().bits_up == c.expected.bits_up &&
                 record.series.back().bits_down == c.expected.bits_down;
      p.detail = std::to_string(tnd) + " " + c.unit_up +
                 " up, " + std::to_string(tnd) + " bits down (T·n·d = " +
                 std::to_string(tnd) + ")";
      if (!p.passed) {
        const auto& l = record.ledger;
        p.detail = "ledger mismatch";
        p.counterexample = {{"bits_up", l.bits_up},
                            {"bits_down", l.bits_down},
                            {"floats_up", l.floats_up},
                            {"floats_down", l.floats_down},
                            {"expected_T_n_d", tnd}};
      }
      report.properties.push_back(std::move(p));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// assumptions

SuiteReport assumptions_suite() {
  SuiteReport report{"assumptions", {}};
  ProblemConfig pc;
  pc.dim = 20;
  pc.nodes = 4;
  pc.samples_per_node = 64;
  pc.heterogeneity = 0.5;
  pc.seed = 3;
  const Problem problem = make_logreg_problem(pc);
  const auto& k = problem.constants();
  const int d = problem.dim();
  const double box = kCertifiedRadius;
  RandomStream rng = derive_stream(kSuiteSeed, 3, 0, StreamPurpose::kAux);

  auto random_sample = [&](int& node, std::size_t& sample) {
    node = static_cast<int>(rng.index(problem.nodes()));
    sample = rng.index(problem.samples_per_node());
  };

  {
    PropertyResult p;
    p.name = "per-sample gradients are L-Lipschitz";
    p.passed = true;
    double worst = 0.0;
    for (int i = 0; i < 10'000 && p.passed; ++i) {
      int node;
      std::size_t sample;
      random_sample(node, sample);
      const Vector x = box_point(d, box, rng);
      // Half the pairs are close, where the local curvature dominates.
      const double spread = (i % 2 == 0) ? box : 1e-3;
      Vector y = x;
      for (int c = 0; c < d; ++c) y[c] += spread * (2.0 * rng.uniform() - 1.0);
      const double gap = l2_norm(problem.sample_grad(node, sample, x) -
                                 problem.sample_grad(node, sample, y));
      const double dist = l2_norm(x - y);
      if (dist == 0.0) continue;
      worst = std::max(worst, gap / dist);
      if (gap > k.smoothness * dist) {
        p.passed = false;
        p.counterexample = {{"node", node}, {"sample", sample},
                            {"x", x.raw()}, {"y", y.raw()},
                            {"ratio", gap / dist}, {"L", k.smoothness}};
      }
    }
    p.detail = "max observed ratio " + fmt(worst) + " vs L = " + fmt(k.smoothness);
    report.properties.push_back(std::move(p));
  }
  {
    PropertyResult p;
    p.name = "per-sample gradients are bounded by G";
    p.passed = true;
    double worst = 0.0;
    for (int i = 0; i < 10'000 && p.passed; ++i) {
      int node;
      std::size_t sample;
      random_sample(node, sample);
      // Include far points: the bound is global.
      const double radius = (i % 2 == 0) ? box : 1e3;
      const Vector x = box_point(d, radius, rng);
      const double g = linf_norm(problem.sample_grad(node, sample, x));
      worst = std::max(worst, g);
      if (g > k.grad_bound) {
        p.passed = false;
        p.counterexample = {{"node", node}, {"sample", sample}, {"x", x.raw()},
                            {"linf", g}, {"G", k.grad_bound}};
      }
    }
    p.detail = "max observed " + fmt(worst) + " vs G = " + fmt(k.grad_bound);
    report.properties.push_back(std::move(p));
  }
  {
    PropertyResult p;
    p.name = "sample gradients average to the exact gradient";
    p.passed = true;
    double worst = 0.0;
    for (int i = 0; i < 10 && p.passed; ++i) {
      const Vector x = box_point(d, box, rng);
      Vector total(d);
      for (int j = 0; j < problem.nodes(); ++j) {
        Vector node_sum(d);
        for (int s = 0; s < problem.samples_per_node(); ++s) {
          node_sum = axpby(1.0, node_sum, 1.0, problem.sample_grad(j, s, x));
        }
        const Vector node_mean = axpby(1.0 / problem.samples_per_node(), node_sum,
                                       0.0, node_sum);
        const double err = linf_norm(node_mean - problem.node_grad(j, x));
        worst = std::max(worst, err);
        total = axpby(1.0, total, 1.0, node_mean);
      }
      const Vector mean = axpby(1.0 / problem.nodes(), total, 0.0, total);
      worst = std::max(worst, linf_norm(mean - problem.full_grad(x)));
      if (worst > 1e-12) {
        p.passed = false;
        p.counterexample = {{"x", x.raw()}, {"error", worst}};
      }
    }
    p.detail = "max deviation " + fmt(worst);
    report.properties.push_back(std::move(p));
  }
  {
    PropertyResult p;
    p.name = "gradient noise is bounded by sigma^2 on the certified box";
    p.passed = true;
    double worst = 0.0;
    const double sigma_sq = k.noise * k.noise;
    for (int i = 0; i < 200 && p.passed; ++i) {
      const Vector x = box_point(d, box, rng);
      const double noise = problem.noise_sq_at(x);
      worst = std::max(worst, noise);
      if (noise > sigma_sq) {
        p.passed = false;
        p.counterexample = {{"x", x.raw()}, {"noise_sq", noise}, {"sigma_sq", sigma_sq}};
      }
    }
    p.detail = "max observed " + fmt(worst) + " vs sigma^2 = " + fmt(sigma_sq);
    report.properties.push_back(std::move(p));
  }
  {
    PropertyResult p;
    p.name = "f is bounded below by f_star";
    p.passed = true;
    double lowest = problem.value(Vector(d));
    for (int i = 0; i < 10'000 && p.passed; ++i) {
      const Vector x = box_point(d, (i % 2 == 0) ? box : 1e3, rng);
      const double f = problem.value(x);
      lowest = std::min(lowest, f);
      if (f < k.f_star) {
        p.passed = false;
        p.counterexample = {{"x", x.raw()}, {"f", f}, {"f_star", k.f_star}};
      }
    }
    const double f0 = problem.value(Vector(d));
    if (std::abs(k.delta_f - (f0 - k.f_star)) > 1e-12) {
      p.passed = false;
      p.counterexample = {{"delta_f", k.delta_f}, {"f(0) - f_star", f0 - k.f_star}};
    }
    p.detail = "lowest observed " + fmt(lowest) + " vs f_star = " + fmt(k.f_star);
    report.properties.push_back(std::move(p));
  }
  return report;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed; });
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "lemma1", "unbiased-sign", "reduction", "bits", "assumptions"};
  return names;
}

SuiteReport run_verify_suite(std::string_view suite) {
  if (suite == "lemma1") return lemma1_suite();
  if (suite == "unbiased-sign") return unbiased_sign_suite();
  if (suite == "reduction") return reduction_suite();
  if (suite == "bits") return bits_suite();
  if (suite == "assumptions") return assumptions_suite();
  throw Error(ErrorCategory::kConfiguration,
              "unknown verify suite '" + std::string(suite) +
                  "' (lemma1, unbiased-sign, reduction, bits, assumptions)");
}

json to_json(const SuiteReport& report) {
  json properties = json::array();
  for (const auto& p : report.properties) {
    json item = {{"name", p.name}, {"passed", p.passed}, {"detail", p.detail}};
    if (!p.counterexample.is_null()) item["counterexample"] = p.counterexample;
    properties.push_back(std::move(item));
  }
  return {{"suite", report.suite},
          {"passed", report.passed()},
          {"properties", properties}};
}

}  // namespace lionlab
