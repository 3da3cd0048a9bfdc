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

#include <iostream>

#include "CLI11.hpp"
#include "lionlab/cli.hpp"
#include "lionlab/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lionlab: Lion optimizer family on simulated clusters"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run one configuration over its seeds");
  run->add_option("--config", config_path, "Run config JSON")->required();
  run->add_option("--out", out_dir, "Output directory")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a built-in invariant suite");
  verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(lionlab::verify_suite_names()));

  lionlab::RatesOptions rates_options;
  int nodes = 0;
  auto* rates = app.add_subcommand("rates", "Sweep T and fit the log-log slope");
  rates->add_option("--theorem", rates_options.theorem,
                    "Theorem schedule id (optional with --self-test)");
  rates->add_option("--T", rates_options.T_list, "Comma-separated horizons")
      ->delimiter(',');
  rates->add_option("--seeds", rates_options.seeds, "Comma-separated seeds")
      ->delimiter(',');
  rates->add_option("--out", rates_options.out_path, "RateFit JSON path")
      ->required();
  rates->add_flag("--self-test", rates_options.self_test,
                  "Fit an exact synthetic power law instead of running");
  auto* nodes_opt = rates->add_option("--n", nodes, "Nodes in the benchmark problem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lionlab::kExitConfig;
  }

  if (*run) return lionlab::cmd_run(config_path, out_dir, std::cout, std::cerr);
  if (*verify) return lionlab::cmd_verify(suite, std::cout, std::cerr);
  if (*nodes_opt) rates_options.nodes = nodes;
  return lionlab::cmd_rates(rates_options, std::cout, std::cerr);
}
