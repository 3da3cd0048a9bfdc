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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "lionlab/random.hpp"

namespace lionlab {

// Dense real vector. Carries x, m, v and gradients for every algorithm.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : values_(dim, fill) {}
  Vector(std::initializer_list<double> values) : values_(values) {}
  explicit Vector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t dim() const noexcept { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& raw() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  bool all_finite() const noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> values_;
};

// Output of sign / unbiased_sign; entries are in {-1, 0, +1}.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t dim) : values_(dim, 0) {}
  explicit SignVector(std::vector<std::int8_t> values)
      : values_(std::move(values)) {}

  std::size_t dim() const noexcept { return values_.size(); }
  std::int8_t operator[](std::size_t i) const { return values_[i]; }
  std::int8_t& operator[](std::size_t i) { return values_[i]; }
  std::span<const std::int8_t> values() const noexcept { return values_; }

  Vector to_vector() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<std::int8_t> values_;
};

// Componentwise sign with sign(0) = 0 and no thresholding.
SignVector sign(const Vector& v);

// Randomized +-1 quantizer with E[out] = v / R. Draws one uniform per
// coordinate in index order; +1 iff u < (R + v_k) / (2R).
SignVector unbiased_sign(const Vector& v, double radius, RandomStream& rng);

// a*x + b*y, evaluated as (a * x_k) + (b * y_k).
Vector axpby(double a, const Vector& x, double b, const Vector& y);
Vector operator-(const Vector& x, const Vector& y);

double l1_norm(const Vector& v);
double l2_norm(const Vector& v);
double l2_norm_sq(const Vector& v);
double linf_norm(const Vector& v);
// ||x - y||^2 without materializing the difference.
double distance_sq(const Vector& x, const Vector& y);

void require_same_dim(const Vector& x, const Vector& y, const char* what);

}  // namespace lionlab
