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

#include "lionlab/errors.hpp"

namespace lionlab {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kInvalidInput: return "invalid-input";
    case ErrorCategory::kInvalidParameter: return "invalid-parameter";
    case ErrorCategory::kRangeViolation: return "range-violation";
    case ErrorCategory::kShape: return "shape";
    case ErrorCategory::kConfiguration: return "config";
    case ErrorCategory::kDivergence: return "divergence";
    case ErrorCategory::kInsufficientData: return "insufficient-data";
    case ErrorCategory::kInvalidPairing: return "invalid-pairing";
    case ErrorCategory::kInvariantViolation: return "invariant-violation";
    case ErrorCategory::kIo: return "io";
  }
  return "unknown";
}

}  // namespace lionlab
