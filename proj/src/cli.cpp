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

#include "lionlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <optional>
#include <set>

#include "json.hpp"
#include "lionlab/config.hpp"
#include "lionlab/harness.hpp"
#include "lionlab/verify.hpp"

namespace lionlab {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << error_json(e) << '\n';
    return exit_code_for(e.category());
  } catch (const json::exception& e) {
    err << json{{"error", "io"}, {"message", e.what()}}.dump() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << json{{"error", "io"}, {"message", e.what()}}.dump() << '\n';
    return kExitIo;
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCategory::kIo, "write failed for '" + path.string() + "'");
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void ensure_parent(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) {
    throw Error(ErrorCategory::kIo, "cannot create directory '" +
                                        path.parent_path().string() + "': " +
                                        ec.message());
  }
}

}  // namespace

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kDivergence:
      return kExitDivergence;
    case ErrorCategory::kIo:
      return kExitIo;
    case ErrorCategory::kInvariantViolation:
      return kExitVerifyFailed;
    default:
      return kExitConfig;
  }
}

std::string error_json(const Error& error) {
  json j = {{"error", std::string(to_string(error.category()))},
            {"message", error.what()}};
  if (const auto* d = dynamic_cast<const DivergenceError*>(&error)) {
    j["step"] = d->step();
  }
  return j.dump();
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_run_config(config_path);
    const Problem problem = make_logreg_problem(config.problem);
    const Schedule schedule = resolve_schedule(config, problem);
    const ExperimentSpec spec = experiment_spec(config);

    std::vector<RunRecord> records(config.seeds.size());
    parallel_for(records.size(), [&](std::size_t i) {
      records[i] = run_once(problem, spec, schedule, config.T, config.seeds[i]);
    });

    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
      throw Error(ErrorCategory::kIo,
                  "cannot create output directory '" + out_dir + "': " + ec.message());
    }
    json runs = json::array();
    for (const auto& record : records) {
      const std::string name =
          "run_seed" + std::to_string(record.config.run_seed) + ".csv";
      std::ofstream csv(dir / name);
      if (!csv) throw Error(ErrorCategory::kIo, "cannot write '" + (dir / name).string() + "'");
      write_csv(csv, record);
      if (!csv) throw Error(ErrorCategory::kIo, "write failed for '" + name + "'");
      runs.push_back({{"seed", record.config.run_seed},
                      {"csv", name},
                      {"avg_grad_l1", record.summary.avg_grad_l1},
                      {"min_grad_l1", record.summary.min_grad_l1},
                      {"wallclock_seconds", record.summary.wallclock_seconds},
                      {"ledger", to_json(record.ledger)}});
    }
    json summary = {{"config", to_json(config)},
                    {"schedule", to_json(schedule)},
                    {"constants", to_json(problem.constants())},
                    {"runs", runs}};
    write_json(dir / "summary.json", summary);
    out << "wrote " << records.size() << " run(s) to " << out_dir << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SuiteReport report = run_verify_suite(suite);
    for (const auto& p : report.properties) {
      out << (p.passed ? "PASS " : "FAIL ") << p.name << ": " << p.detail << '\n';
      if (!p.passed) {
        out << "  counterexample: " << p.counterexample.dump() << '\n';
      }
    }
    out << suite << ": " << (report.passed() ? "all properties hold" : "FAILED")
        << '\n';
    if (!report.passed()) {
      err << json{{"error", "verify-failed"},
                  {"suite", suite},
                  {"report", to_json(report)}}
                 .dump()
          << '\n';
      return static_cast<int>(kExitVerifyFailed);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_rates(const RatesOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    // The self-test fits synthetic data, so the theorem only labels the output.
    const auto theorem = options.self_test && options.theorem.empty()
                             ? std::optional<TheoremId>(TheoremId::kT1)
                             : parse_theorem(options.theorem);
    if (!theorem) {
      throw Error(ErrorCategory::kConfiguration,
                  options.theorem.empty()
                      ? std::string("--theorem is required")
                      : "unknown theorem '" + options.theorem + "'");
    }
    std::vector<std::int64_t> T_list = options.T_list;
    if (options.self_test && T_list.empty()) T_list = {100, 1000, 10000, 100000};
    const std::set<std::int64_t> distinct(T_list.begin(), T_list.end());
    if (distinct.size() < 2) {
      throw Error(ErrorCategory::kInsufficientData,
                  "--T needs at least two distinct horizons for a fit");
    }
    if (options.out_path.empty()) {
      throw Error(ErrorCategory::kConfiguration, "--out is required");
    }
    json result = {{"theorem_id", std::string(to_string(*theorem))},
                   {"T_list", T_list}};

    if (options.self_test) {
      // Exact power law y = 3 T^(-1/4): the fit must return the exponent.
      std::vector<std::pair<double, double>> samples;
      for (auto T : T_list) {
        samples.emplace_back(static_cast<double>(T),
                             3.0 * std::pow(static_cast<double>(T), -0.25));
      }
      const RateFit fit = fit_power_law(samples);
      result["mode"] = "self-test";
      result["expected_slope"] = -0.25;
      result["fit"] = to_json(fit);
      const fs::path path(options.out_path);
      ensure_parent(path);
      write_json(path, result);
      const bool ok = std::abs(fit.slope + 0.25) <= 1e-9;
      out << "self-test slope " << format_double(fit.slope)
          << (ok ? " (ok)" : " (expected -0.25)") << '\n';
      return static_cast<int>(ok ? kExitOk : kExitVerifyFailed);
    }

    if (options.seeds.empty()) {
      throw Error(ErrorCategory::kConfiguration, "--seeds must not be empty");
    }
    const bool centralized =
        *theorem == TheoremId::kT1 || *theorem == TheoremId::kT2;
    const int nodes = options.nodes.value_or(centralized ? 1 : 8);
    if (nodes < 1 || (centralized && nodes != 1)) {
      throw Error(ErrorCategory::kConfiguration,
                  "--n must be 1 for T1/T2 and >= 1 otherwise");
    }
    const ExperimentSpec spec =
        theorem_experiment(*theorem, benchmark_problem(nodes));
    const auto records = sweep(spec, T_list, options.seeds);
    const RateFit fit = fit_rate(records);

    json runs = json::array();
    for (const auto& r : records) {
      runs.push_back({{"T", r.config.T},
                      {"seed", r.config.run_seed},
                      {"avg_grad_l1", r.summary.avg_grad_l1},
                      {"min_grad_l1", r.summary.min_grad_l1}});
    }
    json problem = to_json(spec.problem);
    result["mode"] = "sweep";
    result["algorithm"] = std::string(to_string(spec.algorithm));
    if (is_communication_efficient(spec.algorithm)) {
      result["q1"] = std::string(to_string(spec.q1.kind));
      result["q2"] = std::string(to_string(spec.q2.kind));
    }
    result["problem"] = problem;
    result["seeds"] = options.seeds;
    result["runs"] = runs;
    result["fit"] = to_json(fit);
    const fs::path path(options.out_path);
    ensure_parent(path);
    write_json(path, result);
    out << to_string(*theorem) << " (" << to_string(spec.algorithm)
        << "): slope " << format_double(fit.slope) << ", r^2 "
        << format_double(fit.r_squared) << '\n';
    return static_cast<int>(kExitOk);
  });
}

}  // namespace lionlab
