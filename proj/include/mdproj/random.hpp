/*
 * Copyright 2026 The mdproj Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <limits>

namespace mdproj {

// Purpose tags for derived streams. The numeric values are part of the
// reproducibility contract; do not renumber.
enum class StreamRole : std::uint64_t {
  Theta = 1,
  Paths = 2,
  Surrogate = 3,
  Design = 4,
  Coupling = 5,
  History = 6,
  Moments = 7,
};

/// One step of SplitMix64; advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Counter-based seed derivation: a pure function of its four arguments.
///
/// Streams for independent work items are obtained as
/// `Stream(derive_seed(master, n, replicate, role))`, so the values consumed
/// by a replicate never depend on how replicates are scheduled on threads.
/// Nested items (a path inside a theta replicate) derive again from the
/// parent seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n,
                          std::uint64_t replicate, StreamRole role) noexcept;

/// xoshiro256** generator with portable uniform and Gaussian variates.
///
/// std:: distributions are implementation-defined, so the variates are
/// produced here to keep output bytes identical across toolchains.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next(); }
  result_type next() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;

  /// Standard normal (Box-Muller, pairs cached).
  double normal() noexcept;

  /// +1 or -1 with probability 1/2 each.
  double rademacher() noexcept;

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace mdproj
