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

#include "lionlab/random.hpp"

#include <cmath>
#include <numbers>

namespace lionlab {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t RandomStream::next() noexcept {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix64(state_);
}

double RandomStream::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::size_t RandomStream::index(std::size_t bound) noexcept {
  // Lemire's multiply-shift with rejection; unbiased for any bound.
  const std::uint64_t range = bound;
  u128 product = static_cast<u128>(next()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      product = static_cast<u128>(next()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

double RandomStream::normal() noexcept {
  // Box-Muller; one draw per call keeps the stream position predictable.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

RandomStream derive_stream(std::uint64_t seed, std::uint64_t node,
                           std::uint64_t step, StreamPurpose purpose) noexcept {
  std::uint64_t h = mix64(seed + 0x632BE59BD9B4E019ull);
  h = mix64(h ^ (node + 0x9E3779B97F4A7C15ull));
  h = mix64(h ^ (step + 0xD1B54A32D192ED03ull));
  h = mix64(h ^ static_cast<std::uint64_t>(purpose));
  return RandomStream(h);
}

}  // namespace lionlab
