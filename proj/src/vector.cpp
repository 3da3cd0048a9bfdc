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

#include "lionlab/vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lionlab/errors.hpp"

namespace lionlab {

bool Vector::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return std::isfinite(x); });
}

Vector SignVector::to_vector() const {
  Vector out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out[i] = static_cast<double>(values_[i]);
  }
  return out;
}

void require_same_dim(const Vector& x, const Vector& y, const char* what) {
  if (x.dim() != y.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << x.dim() << " vs " << y.dim()
        << ")";
    throw Error(ErrorCategory::kShape, msg.str());
  }
}

SignVector sign(const Vector& v) {
  SignVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double x = v[i];
    if (!std::isfinite(x)) {
      std::ostringstream msg;
      msg << "sign: non-finite entry at index " << i;
      throw Error(ErrorCategory::kInvalidInput, msg.str());
    }
    out[i] = x > 0.0 ? 1 : (x < 0.0 ? -1 : 0);
  }
  return out;
}

SignVector unbiased_sign(const Vector& v, double radius, RandomStream& rng) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCategory::kInvalidParameter,
                "unbiased_sign: radius must be positive and finite");
  }
  SignVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double x = v[i];
    if (!std::isfinite(x)) {
      throw Error(ErrorCategory::kInvalidInput,
                  "unbiased_sign: non-finite input");
    }
    if (std::abs(x) > radius) {
      std::ostringstream msg;
      msg << "unbiased_sign: |v[" << i << "]| = " << std::abs(x)
          << " exceeds radius " << radius;
      throw RangeViolationError(msg.str());
    }
    const double p_plus = (radius + x) / (2.0 * radius);
    out[i] = rng.uniform() < p_plus ? 1 : -1;
  }
  return out;
}

Vector axpby(double a, const Vector& x, double b, const Vector& y) {
  require_same_dim(x, y, "axpby");
  Vector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out[i] = a * x[i] + b * y[i];
  }
  return out;
}

Vector operator-(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "subtract");
  Vector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out[i] = x[i] - y[i];
  }
  return out;
}

double l1_norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double l2_norm_sq(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double l2_norm(const Vector& v) { return std::sqrt(l2_norm_sq(v)); }

double linf_norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double distance_sq(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "distance_sq");
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

}  // namespace lionlab
