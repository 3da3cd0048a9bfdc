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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lionlab/errors.hpp"

namespace lionlab {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitDivergence = 3,
  kExitIo = 4,
};

int exit_code_for(ErrorCategory category);

// One JSON line: {"error": <category>, "message": ..., ...}.
std::string error_json(const Error& error);

// Each command catches library errors, writes the JSON error line to err and
// returns the matching exit code.
int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err);

struct RatesOptions {
  std::string theorem;
  std::vector<std::int64_t> T_list;
  std::vector<std::uint64_t> seeds;
  std::string out_path;
  bool self_test = false;
  // Node count of the benchmark problem; 1 for T1/T2 and 8 otherwise.
  std::optional<int> nodes;
};

int cmd_rates(const RatesOptions& options, std::ostream& out, std::ostream& err);

}  // namespace lionlab
