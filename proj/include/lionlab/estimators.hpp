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

#include "lionlab/vector.hpp"

namespace lionlab {

// Exponential momentum: (1 - beta) * m_prev + beta * g.
Vector momentum_update(const Vector& m_prev, const Vector& g, double beta);

// STORM recursive estimator:
//   (1 - beta) * m_prev + beta * g_curr + (1 - beta) * (g_curr - g_prev)
// evaluated left to right. g_curr and g_prev must come from the same sample
// at x_t and x_{t-1}; PairedGrad guarantees this.
Vector storm_update(const Vector& m_prev, const Vector& g_curr,
                    const Vector& g_prev_same_sample, double beta);

}  // namespace lionlab
