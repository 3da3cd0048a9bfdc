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

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lionlab {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
  nlohmann::json counterexample;  // null when the property held
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool passed() const;
};

// lemma1, unbiased-sign, reduction, bits, assumptions.
const std::vector<std::string>& verify_suite_names();

// Runs a named suite at its built-in sizes. Unknown names are configuration
// errors.
SuiteReport run_verify_suite(std::string_view suite);

nlohmann::json to_json(const SuiteReport& report);

}  // namespace lionlab
