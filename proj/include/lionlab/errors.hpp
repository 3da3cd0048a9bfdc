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
#include <stdexcept>
#include <string>
#include <string_view>

namespace lionlab {

enum class ErrorCategory {
  kInvalidInput,
  kInvalidParameter,
  kRangeViolation,
  kShape,
  kConfiguration,
  kDivergence,
  kInsufficientData,
  kInvalidPairing,
  kInvariantViolation,
  kIo,
};

std::string_view to_string(ErrorCategory category);

// Base of every error raised by the library. The category is what callers
// (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// A non-finite value appeared in the optimizer state.
class DivergenceError : public Error {
 public:
  DivergenceError(std::int64_t step, const std::string& message)
      : Error(ErrorCategory::kDivergence, message), step_(step) {}

  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

// unbiased_sign received a coordinate outside [-R, R]. node/step are -1 when
// the call did not originate from the cluster simulator.
class RangeViolationError : public Error {
 public:
  RangeViolationError(const std::string& message, int node = -1,
                      std::int64_t step = -1)
      : Error(ErrorCategory::kRangeViolation, message),
        node_(node),
        step_(step) {}

  int node() const noexcept { return node_; }
  std::int64_t step() const noexcept { return step_; }

 private:
  int node_;
  std::int64_t step_;
};

}  // namespace lionlab
