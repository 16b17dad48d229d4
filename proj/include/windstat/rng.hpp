/*
 * Copyright 2026 The windstat Authors
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

#include <array>
#include <complex>
#include <cstdint>

namespace windstat {

/// Philox4x32-10 counter-based bijection.
/// Maps a 128-bit counter under a 64-bit key to 128 pseudo-random bits.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter ctr, Key key) noexcept;
};

/// Identifies one ensemble draw: every bit it consumes is a pure function of
/// (seed, stream_id, draw_index, attempt), so any worker can reproduce it.
struct DrawKey {
  std::uint64_t seed = 0;
  std::uint32_t stream_id = 0;
  std::uint32_t draw_index = 0;
  std::uint32_t attempt = 0;  // bumped when a degenerate draw is resampled
};

/// Sequential generator over the blocks of a single draw.
class DrawRng {
 public:
  explicit DrawRng(const DrawKey& key) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal by Box-Muller; the second variate of each pair is cached.
  double normal() noexcept;

  /// Circular complex Gaussian with E|z|^2 = 1.
  std::complex<double> complex_normal() noexcept;

  const DrawKey& key() const noexcept { return key_; }

 private:
  void refill() noexcept;

  DrawKey key_;
  std::uint32_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace windstat
