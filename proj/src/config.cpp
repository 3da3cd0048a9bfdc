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

#include "lionlab/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <set>
#include <string_view>

#include "lionlab/errors.hpp"

namespace lionlab {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCategory::kConfiguration, message);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) config_error(where + ": expected a JSON object");
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto name : allowed) known = known || item.key() == name;
    if (!known) {
      const std::string path =
          where == "config" ? item.key() : where + "." + item.key();
      config_error(path + ": unknown field");
    }
  }
}

const json& required(const json& j, const std::string& where,
                     const std::string& field) {
  auto it = j.find(field);
  if (it == j.end()) {
    const std::string path = where == "config" ? field : where + "." + field;
    config_error(path + ": missing field");
  }
  return *it;
}

double as_double(const json& j, const std::string& name) {
  if (!j.is_number()) config_error(name + " must be a number");
  return j.get<double>();
}

std::int64_t as_int(const json& j, const std::string& name) {
  if (!j.is_number_integer()) config_error(name + " must be an integer");
  return j.get<std::int64_t>();
}

std::uint64_t as_seed(const json& j, const std::string& name) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    config_error(name + " must be a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::string as_string(const json& j, const std::string& name) {
  if (!j.is_string()) config_error(name + " must be a string");
  return j.get<std::string>();
}

CompressorKind as_compressor(const json& j, const std::string& name) {
  const auto text = as_string(j, name);
  auto kind = parse_compressor(text);
  if (!kind) {
    config_error(name + ": unknown compressor '" + text +
                 "' (identity, sign, unbiased-sign)");
  }
  return *kind;
}

}  // namespace

ProblemConfig parse_problem_config(const json& j) {
  require_object(j, "problem");
  reject_unknown(j, "problem",
                 {"kind", "d", "n", "samples_per_node", "heterogeneity",
                  "nonconvex_reg", "seed"});
  ProblemConfig p;
  p.dim = static_cast<int>(as_int(required(j, "problem", "d"), "problem.d"));
  p.nodes = static_cast<int>(as_int(required(j, "problem", "n"), "problem.n"));
  p.samples_per_node = static_cast<int>(as_int(
      required(j, "problem", "samples_per_node"), "problem.samples_per_node"));
  p.heterogeneity = as_double(required(j, "problem", "heterogeneity"),
                              "problem.heterogeneity");
  p.nonconvex_reg = as_double(required(j, "problem", "nonconvex_reg"),
                              "problem.nonconvex_reg");
  p.seed = as_seed(required(j, "problem", "seed"), "problem.seed");
  if (p.dim < 1 || p.nodes < 1 || p.samples_per_node < 1) {
    config_error("problem: d, n and samples_per_node must be >= 1");
  }
  if (!(p.heterogeneity >= 0.0) || !(p.nonconvex_reg >= 0.0)) {
    config_error("problem: heterogeneity and nonconvex_reg must be >= 0");
  }
  return p;
}

json to_json(const ProblemConfig& p) {
  return {{"kind", "logreg"},
          {"d", p.dim},
          {"n", p.nodes},
          {"samples_per_node", p.samples_per_node},
          {"heterogeneity", p.heterogeneity},
          {"nonconvex_reg", p.nonconvex_reg},
          {"seed", p.seed}};
}

RunConfig parse_run_config(const json& j) {
  require_object(j, "config");
  reject_unknown(j, "config", {"problem", "algorithm", "schedule", "run"});
  RunConfig c;

  const json& problem = required(j, "config", "problem");
  require_object(problem, "problem");
  c.kind = as_string(required(problem, "problem", "kind"), "problem.kind");
  if (c.kind != "logreg") {
    config_error("problem.kind: unsupported kind '" + c.kind + "' (logreg)");
  }
  c.problem = parse_problem_config(problem);

  const json& algorithm = required(j, "config", "algorithm");
  require_object(algorithm, "algorithm");
  reject_unknown(algorithm, "algorithm", {"variant", "q1", "q2"});
  const auto variant =
      as_string(required(algorithm, "algorithm", "variant"), "algorithm.variant");
  auto parsed = parse_algorithm(variant);
  if (!parsed) config_error("algorithm.variant: unknown variant '" + variant + "'");
  c.algorithm = *parsed;
  if (algorithm.contains("q1")) c.q1 = as_compressor(algorithm["q1"], "algorithm.q1");
  if (algorithm.contains("q2")) c.q2 = as_compressor(algorithm["q2"], "algorithm.q2");
  if (is_communication_efficient(c.algorithm)) {
    if (!c.q1) config_error("algorithm.q1: required for " + variant);
    if (!c.q2) config_error("algorithm.q2: required for " + variant);
  } else if (c.q1 || c.q2) {
    config_error(std::string(c.q1 ? "algorithm.q1" : "algorithm.q2") +
                 ": only accepted by ce-* variants, not " + variant);
  }
  if (is_centralized(c.algorithm) && c.problem.nodes != 1) {
    config_error("problem.n: " + variant + " runs on a single node (n = 1)");
  }

  const json& schedule = required(j, "config", "schedule");
  require_object(schedule, "schedule");
  reject_unknown(schedule, "schedule",
                 {"theorem_id", "eta", "lambda", "beta1", "beta2", "B0"});
  if (schedule.contains("theorem_id")) {
    const auto id = as_string(schedule["theorem_id"], "schedule.theorem_id");
    auto theorem = parse_theorem(id);
    if (!theorem) config_error("schedule.theorem_id: unknown theorem '" + id + "'");
    c.schedule.theorem = *theorem;
  }
  if (schedule.contains("eta")) c.schedule.eta = as_double(schedule["eta"], "schedule.eta");
  if (schedule.contains("lambda")) {
    c.schedule.lambda = as_double(schedule["lambda"], "schedule.lambda");
  }
  if (schedule.contains("beta1")) {
    c.schedule.beta1 = as_double(schedule["beta1"], "schedule.beta1");
  }
  if (schedule.contains("beta2")) {
    c.schedule.beta2 = as_double(schedule["beta2"], "schedule.beta2");
  }
  if (schedule.contains("B0")) c.schedule.B0 = as_int(schedule["B0"], "schedule.B0");
  if (!c.schedule.theorem && !c.schedule.fully_explicit()) {
    config_error(
        "schedule: give theorem_id or all of eta, lambda, beta1, beta2, B0");
  }

  const json& run = required(j, "config", "run");
  require_object(run, "run");
  reject_unknown(run, "run", {"T", "seeds"});
  c.T = as_int(required(run, "run", "T"), "run.T");
  if (c.T < 1) config_error("run.T must be >= 1");
  const json& seeds = required(run, "run", "seeds");
  if (!seeds.is_array() || seeds.empty()) {
    config_error("run.seeds must be a non-empty array");
  }
  for (const auto& s : seeds) c.seeds.push_back(as_seed(s, "run.seeds[]"));
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::kIo, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    config_error("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& c) {
  json algorithm = {{"variant", std::string(to_string(c.algorithm))}};
  if (c.q1) algorithm["q1"] = std::string(to_string(*c.q1));
  if (c.q2) algorithm["q2"] = std::string(to_string(*c.q2));
  json schedule = json::object();
  if (c.schedule.theorem) {
    schedule["theorem_id"] = std::string(to_string(*c.schedule.theorem));
  }
  if (c.schedule.eta) schedule["eta"] = *c.schedule.eta;
  if (c.schedule.lambda) schedule["lambda"] = *c.schedule.lambda;
  if (c.schedule.beta1) schedule["beta1"] = *c.schedule.beta1;
  if (c.schedule.beta2) schedule["beta2"] = *c.schedule.beta2;
  if (c.schedule.B0) schedule["B0"] = *c.schedule.B0;
  json problem = to_json(c.problem);
  problem["kind"] = c.kind;
  return {{"problem", problem},
          {"algorithm", algorithm},
          {"schedule", schedule},
          {"run", {{"T", c.T}, {"seeds", c.seeds}}}};
}

ExperimentSpec experiment_spec(const RunConfig& c) {
  ExperimentSpec spec;
  spec.problem = c.problem;
  spec.algorithm = c.algorithm;
  spec.theorem = c.schedule.theorem.value_or(default_theorem(c.algorithm));
  if (c.q1) spec.q1 = {*c.q1, 0.0};
  if (c.q2) spec.q2 = {*c.q2, 0.0};
  return spec;
}

Schedule resolve_schedule(const RunConfig& c, const Problem& problem) {
  const ScheduleInputs inputs = schedule_inputs(problem, c.T);
  const TheoremId theorem =
      c.schedule.theorem.value_or(default_theorem(c.algorithm));
  Schedule s;
  s.theorem = theorem;
  if (!c.schedule.fully_explicit()) s = schedule_for(theorem, inputs);
  if (c.schedule.eta) s.eta = *c.schedule.eta;
  if (c.schedule.lambda) s.lambda = *c.schedule.lambda;
  if (c.schedule.beta1) s.beta1 = *c.schedule.beta1;
  if (c.schedule.beta2) s.beta2 = *c.schedule.beta2;
  if (c.schedule.B0) s.B0 = *c.schedule.B0;
  s.required_relations = validate(s, inputs);
  require_valid(s, inputs);
  return s;
}

json to_json(const Schedule& s) {
  json relations = json::array();
  for (const auto& r : s.required_relations) {
    relations.push_back({{"relation", r.name}, {"satisfied", r.satisfied}});
  }
  return {{"theorem_id", std::string(to_string(s.theorem))},
          {"eta", s.eta},
          {"lambda", s.lambda},
          {"beta1", s.beta1},
          {"beta2", s.beta2},
          {"B0", s.B0},
          {"validation", relations}};
}

json to_json(const CommLedger& l) {
  return {{"bits_up", l.bits_up},
          {"bits_down", l.bits_down},
          {"floats_up", l.floats_up},
          {"floats_down", l.floats_down}};
}

json to_json(const ProblemConstants& c) {
  return {{"L", c.smoothness},
          {"sigma", c.noise},
          {"G", c.grad_bound},
          {"f_star", c.f_star},
          {"delta_f", c.delta_f}};
}

json to_json(const RateFit& fit) {
  json points = json::array();
  for (const auto& p : fit.points) {
    points.push_back({{"log_T", p.log_T}, {"log_value", p.log_value}});
  }
  return {{"points", points},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared}};
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const RunRecord& record) {
  out << kCsvHeader << '\n';
  for (const auto& r : record.series) {
    out << r.t << ',' << format_double(r.grad_l1) << ','
        << format_double(r.grad_l2_sq) << ',' << format_double(r.est_err_v)
        << ',' << format_double(r.est_err_m) << ',' << format_double(r.x_inf)
        << ',' << format_double(r.step_sq) << ',' << r.bits_up << ','
        << r.bits_down << '\n';
  }
}

}  // namespace lionlab
