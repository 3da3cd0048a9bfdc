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

#include "lionlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include "lionlab/distributed.hpp"
#include "lionlab/errors.hpp"

namespace lionlab {

ProblemConfig benchmark_problem(int nodes) {
  ProblemConfig config;
  config.dim = 20;
  config.nodes = nodes;
  config.samples_per_node = 256;
  config.heterogeneity = 0.5;
  config.nonconvex_reg = 0.1;
  config.seed = 1;
  return config;
}

ExperimentSpec theorem_experiment(TheoremId theorem, const ProblemConfig& problem) {
  ExperimentSpec spec;
  spec.problem = problem;
  spec.theorem = theorem;
  const Compressor sign{CompressorKind::kSign, 0.0};
  const Compressor unbiased{CompressorKind::kUnbiasedSign, 0.0};
  switch (theorem) {
    case TheoremId::kT1: spec.algorithm = Algorithm::kLionV1; break;
    case TheoremId::kT2: spec.algorithm = Algorithm::kLionV2; break;
    case TheoremId::kT3: spec.algorithm = Algorithm::kDisV1; break;
    case TheoremId::kT4: spec.algorithm = Algorithm::kDisV2; break;
    case TheoremId::kT5a:
    case TheoremId::kT5b:
      spec.algorithm = Algorithm::kCeV1;
      spec.q1 = unbiased;
      spec.q2 = sign;
      break;
    case TheoremId::kT7:
      spec.algorithm = Algorithm::kCeV1;
      spec.q1 = unbiased;
      spec.q2 = unbiased;
      break;
    case TheoremId::kT8:
      spec.algorithm = Algorithm::kCeV2;
      spec.q1 = unbiased;
      spec.q2 = unbiased;
      break;
  }
  return spec;
}

ScheduleInputs schedule_inputs(const Problem& problem, std::int64_t T) {
  return {T, problem.dim(), problem.nodes(), problem.constants().smoothness,
          problem.constants().grad_bound};
}

RunRecord run_once(const Problem& problem, const ExperimentSpec& spec,
                   const Schedule& schedule, std::int64_t T, std::uint64_t seed,
                   const LionOptions& options) {
  RunRecord record;
  switch (spec.algorithm) {
    case Algorithm::kLionV1:
      record = lion_run(problem, schedule, T, seed, LionVariant::kV1, options);
      break;
    case Algorithm::kLionV2:
      record = lion_run(problem, schedule, T, seed, LionVariant::kV2, options);
      break;
    default:
      record = cluster_run(problem, schedule, T, seed,
                           cluster_variant(spec.algorithm), spec.q1, spec.q2,
                           options);
      break;
  }
  record.config.problem_seed = spec.problem.seed;
  return record;
}

std::vector<RunRecord> sweep(const ExperimentSpec& spec,
                             std::span<const std::int64_t> T_list,
                             std::span<const std::uint64_t> seeds,
                             const LionOptions& options) {
  const Problem problem = make_logreg_problem(spec.problem);
  return sweep(problem, spec, T_list, seeds, options);
}

std::vector<RunRecord> sweep(const Problem& problem, const ExperimentSpec& spec,
                             std::span<const std::int64_t> T_list,
                             std::span<const std::uint64_t> seeds,
                             const LionOptions& options) {
  if (!std::is_sorted(T_list.begin(), T_list.end())) {
    throw Error(ErrorCategory::kConfiguration, "sweep: T_list must be ascending");
  }
  std::vector<Schedule> schedules;
  for (std::int64_t T : T_list) {
    try {
      schedules.push_back(
          schedule_for(spec.theorem, schedule_inputs(problem, T)));
    } catch (const Error& e) {
      throw Error(e.category(),
                  "sweep at T=" + std::to_string(T) + ": " + e.what());
    }
  }

  const std::size_t jobs = T_list.size() * seeds.size();
  std::vector<RunRecord> out(jobs);
  parallel_for(jobs, [&](std::size_t i) {
    const std::size_t ti = i / seeds.size();
    const std::uint64_t seed = seeds[i % seeds.size()];
    try {
      out[i] = run_once(problem, spec, schedules[ti], T_list[ti], seed, options);
    } catch (const DivergenceError& e) {
      std::ostringstream msg;
      msg << "sweep at T=" << T_list[ti] << ", seed=" << seed << ": "
          << e.what();
      throw DivergenceError(e.step(), msg.str());
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "sweep at T=" << T_list[ti] << ", seed=" << seed << ": "
          << e.what();
      throw Error(e.category(), msg.str());
    }
  });
  return out;
}

RateFit fit_points(std::vector<RatePoint> points) {
  if (points.size() < 2) {
    throw Error(ErrorCategory::kInsufficientData,
                "fit_rate: need at least 2 distinct T values");
  }
  const double m = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    sx += p.log_T;
    sy += p.log_value;
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.log_T - mx;
    const double dy = p.log_value - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCategory::kInsufficientData,
                "fit_rate: need at least 2 distinct T values");
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& p : points) {
    const double r = p.log_value - (fit.intercept + fit.slope * p.log_T);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.points = std::move(points);
  return fit;
}

RateFit fit_power_law(std::span<const std::pair<double, double>> samples) {
  std::vector<RatePoint> points;
  points.reserve(samples.size());
  for (const auto& [T, y] : samples) {
    if (!(T > 0.0) || !(y > 0.0)) {
      throw Error(ErrorCategory::kInvalidInput,
                  "fit_power_law: T and y must be positive");
    }
    points.push_back({std::log(T), std::log(y)});
  }
  return fit_points(std::move(points));
}

RateFit fit_rate(std::span<const RunRecord> records) {
  std::map<std::int64_t, std::vector<double>> by_T;
  for (const auto& r : records) {
    by_T[r.config.T].push_back(r.summary.avg_grad_l1);
  }
  std::vector<std::pair<double, double>> samples;
  for (auto& [T, values] : by_T) {
    samples.emplace_back(static_cast<double>(T), median(std::move(values)));
  }
  if (samples.size() < 2) {
    throw Error(ErrorCategory::kInsufficientData,
                "fit_rate: need at least 2 distinct T values");
  }
  return fit_power_law(samples);
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCategory::kInsufficientData, "median of an empty set");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                : 0.5 * (values[mid - 1] + values[mid]);
}

double metric_value(const RunRecord& record, Metric metric) {
  auto column_mean = [&record](double RunRow::*field) {
    if (record.series.empty()) return 0.0;
    double s = 0.0;
    for (const auto& row : record.series) s += row.*field;
    return s / static_cast<double>(record.series.size());
  };
  switch (metric) {
    case Metric::kAvgGradL1: return record.summary.avg_grad_l1;
    case Metric::kMinGradL1: return record.summary.min_grad_l1;
    case Metric::kAvgEstErrV: return column_mean(&RunRow::est_err_v);
    case Metric::kAvgEstErrM: return column_mean(&RunRow::est_err_m);
  }
  return 0.0;
}

Comparison compare_variants(std::span<const RunRecord> a,
                            std::span<const RunRecord> b, Metric metric,
                            Direction direction) {
  using Key = std::pair<std::int64_t, std::uint64_t>;
  auto index = [metric](std::span<const RunRecord> records) {
    std::map<Key, double> out;
    for (const auto& r : records) {
      if (!out.emplace(Key{r.config.T, r.config.run_seed},
                       metric_value(r, metric))
               .second) {
        throw Error(ErrorCategory::kInvalidPairing,
                    "compare_variants: duplicate (T, seed) in one record set");
      }
    }
    return out;
  };
  const auto ia = index(a);
  const auto ib = index(b);
  if (ia.size() != ib.size() ||
      !std::equal(ia.begin(), ia.end(), ib.begin(),
                  [](const auto& x, const auto& y) { return x.first == y.first; })) {
    throw Error(ErrorCategory::kInvalidPairing,
                "compare_variants: record sets cover different (T, seed) pairs");
  }

  Comparison c;
  std::vector<double> va, vb;
  for (const auto& [key, value_a] : ia) {
    const double value_b = ib.at(key);
    const bool better = direction == Direction::kLowerIsBetter
                            ? value_a < value_b
                            : value_a > value_b;
    c.wins += better ? 1 : 0;
    ++c.total;
    va.push_back(value_a);
    vb.push_back(value_b);
  }
  if (c.total > 0) {
    c.median_a = median(std::move(va));
    c.median_b = median(std::move(vb));
  }
  return c;
}

unsigned worker_count() {
  if (const char* env = std::getenv("LIONLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count;
             i = next.fetch_add(1)) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lionlab
