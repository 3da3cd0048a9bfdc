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

#include "lionlab/estimators.hpp"

#include <sstream>

#include "lionlab/errors.hpp"

namespace lionlab {
namespace {

void check_beta(double beta, const char* op) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    std::ostringstream msg;
    msg << op << ": beta must lie in (0, 1], got " << beta;
    throw Error(ErrorCategory::kInvalidParameter, msg.str());
  }
}

}  // namespace

Vector momentum_update(const Vector& m_prev, const Vector& g, double beta) {
  check_beta(beta, "momentum_update");
  require_same_dim(m_prev, g, "momentum_update");
  const double keep = 1.0 - beta;
  Vector out(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    out[i] = keep * m_prev[i] + beta * g[i];
  }
  return out;
}

Vector storm_update(const Vector& m_prev, const Vector& g_curr,
                    const Vector& g_prev_same_sample, double beta) {
  check_beta(beta, "storm_update");
  require_same_dim(m_prev, g_curr, "storm_update");
  require_same_dim(g_curr, g_prev_same_sample, "storm_update");
  const double keep = 1.0 - beta;
  Vector out(g_curr.dim());
  for (std::size_t i = 0; i < g_curr.dim(); ++i) {
    out[i] = keep * m_prev[i] + beta * g_curr[i] +
             keep * (g_curr[i] - g_prev_same_sample[i]);
  }
  return out;
}

}  // namespace lionlab
