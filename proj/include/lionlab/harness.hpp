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
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lionlab/lion.hpp"
#include "lionlab/problems.hpp"
#include "lionlab/record.hpp"
#include "lionlab/schedules.hpp"

namespace lionlab {

// Everything that defines one experiment except (T, seed).
struct ExperimentSpec {
  ProblemConfig problem;
  Algorithm algorithm = Algorithm::kLionV1;
  TheoremId theorem = TheoremId::kT1;
  Compressor q1;
  Compressor q2;
};

// Problem the rate experiments run on.
ProblemConfig benchmark_problem(int nodes = 1);

// Algorithm and compressors a theorem's schedule belongs to. Nodes always send
// unbiased signs; the server takes the plain sign for T5a/T5b and the unbiased
// sign for T7/T8.
ExperimentSpec theorem_experiment(TheoremId theorem, const ProblemConfig& problem);

ScheduleInputs schedule_inputs(const Problem& problem, std::int64_t T);

// Runs one configuration through the matching driver and stamps the record
// with the full snapshot.
RunRecord run_once(const Problem& problem, const ExperimentSpec& spec,
                   const Schedule& schedule, std::int64_t T, std::uint64_t seed,
                   const LionOptions& options = {});

// One record per (T, seed), schedule recomputed for every T, ordered by T then
// seed regardless of which worker finished first.
std::vector<RunRecord> sweep(const ExperimentSpec& spec,
                             std::span<const std::int64_t> T_list,
                             std::span<const std::uint64_t> seeds,
                             const LionOptions& options = {});
// Same, on a prebuilt problem.
std::vector<RunRecord> sweep(const Problem& problem, const ExperimentSpec& spec,
                             std::span<const std::int64_t> T_list,
                             std::span<const std::uint64_t> seeds,
                             const LionOptions& options = {});

struct RatePoint {
  double log_T = 0.0;
  double log_value = 0.0;
};

struct RateFit {
  std::vector<RatePoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// OLS of ln(median over seeds of avg_grad_l1) on ln T.
RateFit fit_rate(std::span<const RunRecord> records);
// OLS of ln y on ln T for raw (T, y) pairs.
RateFit fit_power_law(std::span<const std::pair<double, double>> samples);
RateFit fit_points(std::vector<RatePoint> points);

enum class Metric { kAvgGradL1, kMinGradL1, kAvgEstErrV, kAvgEstErrM };
enum class Direction { kLowerIsBetter, kHigherIsBetter };

double metric_value(const RunRecord& record, Metric metric);

struct Comparison {
  int wins = 0;   // pairs where a is strictly better than b
  int total = 0;
  double median_a = 0.0;
  double median_b = 0.0;
};

// Pairs records by (T, run seed); both sides must cover the same set. Ties are
// not wins.
Comparison compare_variants(std::span<const RunRecord> a,
                            std::span<const RunRecord> b, Metric metric,
                            Direction direction);

double median(std::vector<double> values);

// Worker count from LIONLAB_THREADS, else the hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lionlab
