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

namespace lionlab {

// What a derived stream is used for. Part of the stream key, so adding a new
// consumer never perturbs existing draws.
enum class StreamPurpose : std::uint64_t {
  kSample = 1,
  kNodeCompress = 2,
  kServerCompress = 3,
  kProblemGen = 4,
  kAux = 5,
};

// Node id used for server-side draws.
inline constexpr std::uint64_t kServerNode = 0xFFFF'FFFFull;

// SplitMix64 stream. Cheap to construct, which matters because a fresh stream
// is derived for every (node, step, purpose).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t state) noexcept : state_(state) {}

  std::uint64_t next() noexcept;
  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  // Uniform in {0, ..., bound - 1}; bound must be positive.
  std::size_t index(std::size_t bound) noexcept;
  double normal() noexcept;

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

// hash(seed, node, step, purpose) -> independent stream. Results do not
// depend on the order in which nodes are evaluated.
RandomStream derive_stream(std::uint64_t seed, std::uint64_t node,
                           std::uint64_t step, StreamPurpose purpose) noexcept;

}  // namespace lionlab
