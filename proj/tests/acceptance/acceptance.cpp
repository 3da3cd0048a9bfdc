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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lionlab/errors.hpp"
#include "lionlab/harness.hpp"
#include "lionlab/schedules.hpp"
#include "lionlab/verify.hpp"

using namespace lionlab;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Every property of a verify suite must hold. Failed properties are listed.
Outcome suite_outcome(const char* suite, double budget_s) {
  const auto start = Clock::now();
  const SuiteReport report = run_verify_suite(suite);
  const double elapsed = seconds_since(start);
  Outcome o;
  int held = 0;
  std::ostringstream failed;
  for (const auto& p : report.properties) {
    if (p.passed) {
      ++held;
    } else {
      failed << "; FAILED " << p.name << ": " << p.detail;
    }
  }
  o.passed = report.passed() && (budget_s <= 0 || elapsed < budget_s);
  std::ostringstream d;
  d << held << "/" << report.properties.size() << " properties hold"
    << failed.str() << " [" << fmt("%.2f", elapsed) << " s";
  if (budget_s > 0) d << ", budget " << budget_s << " s";
  d << "]";
  o.detail = d.str();
  return o;
}

Outcome schedule_grid() {
  int valid = 0, rejected = 0, wrong = 0;
  std::ostringstream problems;
  for (auto id : all_theorems()) {
    for (std::int64_t T : {100, 1000, 10000, 100000}) {
      for (int d : {1, 10, 100, 1000}) {
        for (int n : {1, 4, 16, 64}) {
          const ScheduleInputs in{T, d, n, 2.0, 1.2};
          std::string_view expected_relation;
          if (id == TheoremId::kT4 && T < std::int64_t{n} * n) {
            expected_relation = relation::kHorizonGeNSq;
          } else if ((id == TheoremId::kT3 || id == TheoremId::kT7) && T < n) {
            expected_relation = relation::kHorizonGeN;
          }
          try {
            const Schedule s = schedule_for(id, in);
            bool ok = expected_relation.empty();
            for (const auto& r : validate(s, in)) ok = ok && r.satisfied;
            if (ok) {
              ++valid;
            } else {
              ++wrong;
              problems << " " << to_string(id) << "(T=" << T << ",d=" << d
                       << ",n=" << n << ")";
            }
          } catch (const Error& e) {
            const std::string msg = e.what();
            if (!expected_relation.empty() &&
                msg.find(expected_relation) != std::string::npos) {
              ++rejected;
            } else {
              ++wrong;
              problems << " " << to_string(id) << "(T=" << T << ",d=" << d
                       << ",n=" << n << "): " << msg;
            }
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << valid << " grid points valid, " << rejected
    << " rejected with the named side condition, " << wrong << " wrong"
    << problems.str();
  return {wrong == 0, d.str()};
}

const std::vector<std::uint64_t> kSeeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

Outcome rate_separation() {
  const auto start = Clock::now();
  const std::vector<std::int64_t> Ts = {100, 316, 1000, 3162, 10000};
  const RateFit v1 = fit_rate(sweep(theorem_experiment(TheoremId::kT1, benchmark_problem(1)), Ts, kSeeds));
  const RateFit v2 = fit_rate(sweep(theorem_experiment(TheoremId::kT2, benchmark_problem(1)), Ts, kSeeds));
  const double elapsed = seconds_since(start);
  const double gap = v2.slope - v1.slope;
  std::ostringstream d;
  d << "slope v1/T1 " << fmt("%.3f", v1.slope) << " (need <= -0.10), v2/T2 "
    << fmt("%.3f", v2.slope) << ", v2 - v1 = " << fmt("%+.3f", gap)
    << " (need <= -0.03) [" << fmt("%.1f", elapsed) << " s, budget 600 s]";
  return {v1.slope <= -0.10 && gap <= -0.03 && elapsed <= 600.0, d.str()};
}

Outcome n_scaling() {
  const std::vector<std::int64_t> T = {10000};
  const auto many = sweep(theorem_experiment(TheoremId::kT3, benchmark_problem(16)), T, kSeeds);
  const auto one = sweep(theorem_experiment(TheoremId::kT3, benchmark_problem(1)), T, kSeeds);
  std::vector<double> ratio;
  int no_worse = 0;
  for (std::size_t i = 0; i < kSeeds.size(); ++i) {
    ratio.push_back(metric_value(one[i], Metric::kAvgEstErrV) /
                    metric_value(many[i], Metric::kAvgEstErrV));
    if (many[i].summary.avg_grad_l1 <= one[i].summary.avg_grad_l1) ++no_worse;
  }
  const double med = median(ratio);
  std::ostringstream d;
  d << "dis-v1 n=16 vs n=1 at T=1e4: median est_err_v ratio " << fmt("%.2f", med)
    << " (need >= 2), grad l1 no worse in " << no_worse << "/10 (need >= 7)";
  return {med >= 2.0 && no_worse >= 7, d.str()};
}

Outcome vr_estimator() {
  const std::vector<std::int64_t> T = {10000};
  const auto v2 = sweep(theorem_experiment(TheoremId::kT2, benchmark_problem(1)), T, kSeeds);
  const auto v1 = sweep(theorem_experiment(TheoremId::kT1, benchmark_problem(1)), T, kSeeds);
  const Comparison c = compare_variants(v2, v1, Metric::kAvgEstErrM, Direction::kLowerIsBetter);
  std::ostringstream d;
  d << "lion-v2 beats lion-v1 on est_err_m in " << c.wins << "/" << c.total
    << " seeds (need >= 8); medians " << fmt("%.3g", c.median_a) << " vs "
    << fmt("%.3g", c.median_b);
  return {c.wins >= 8, d.str()};
}

Outcome ce_floor() {
  const std::vector<std::int64_t> Ts = {1000, 10000};
  auto medians = [&](TheoremId id) {
    const auto r = sweep(theorem_experiment(id, benchmark_problem(8)), Ts, kSeeds);
    std::vector<double> lo, hi;
    for (const auto& x : r) (x.config.T == 1000 ? lo : hi).push_back(x.summary.avg_grad_l1);
    return std::pair{median(lo), median(hi)};
  };
  const auto [sign_lo, sign_hi] = medians(TheoremId::kT5b);
  const auto [unb_lo, unb_hi] = medians(TheoremId::kT7);
  const double sign_ratio = sign_lo / sign_hi;
  const double unb_ratio = unb_lo / unb_hi;
  std::ostringstream d;
  d << "n=8, T 1e3 -> 1e4: q2=sign (T5b) " << fmt("%.3f", sign_lo) << " -> "
    << fmt("%.3f", sign_hi) << " (ratio " << fmt("%.2f", sign_ratio)
    << ", need within 1.5x); q2=unbiased-sign (T7) " << fmt("%.3f", unb_lo)
    << " -> " << fmt("%.3f", unb_hi) << " (ratio " << fmt("%.2f", unb_ratio)
    << ", need >= 1.5)";
  const bool plateau = sign_ratio <= 1.5 && sign_ratio >= 1.0 / 1.5;
  return {plateau && unb_ratio >= 1.5, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "bounded iterates", [] { return suite_outcome("lemma1", 30.0); }},
      {2, "unbiased sign", [] { return suite_outcome("unbiased-sign", 10.0); }},
      {3, "single-node reductions", [] { return suite_outcome("reduction", 0.0); }},
      {4, "communication accounting", [] { return suite_outcome("bits", 0.0); }},
      {5, "schedule validity", schedule_grid},
      {6, "rate separation", rate_separation},
      {7, "n-scaling", n_scaling},
      {8, "VR estimator", vr_estimator},
      {9, "CE floor", ce_floor},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("C%d %s %s: %s\n", c.id, o.passed ? "PASS" : "FAIL", c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
