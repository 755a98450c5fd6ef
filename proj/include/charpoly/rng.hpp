/*
 * Copyright 2026 charpoly contributors
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

#ifndef CHARPOLY_RNG_HPP
#define CHARPOLY_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>

namespace charpoly::rng {

/// Counter-based generator in the Philox4x32-10 family
/// (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC'11).
///
/// A draw sequence is a pure function of (seed, stream_id, counter), so any
/// (seed, stream_id) pair names an independent substream that reproduces
/// bit-identically regardless of thread scheduling. Streams for Monte Carlo
/// sample i are conventionally derived as stream_id = component_base + i,
/// with component_base = component_index << 40 (see mc.hpp).
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform double in (0, 1]; never returns 0, safe under log().
  double next_unit();

  /// Standard normal draws, Box-Muller over the uniform stream.
  /// Bulk fills share one code path so that every consumer of the same
  /// stream sees the same values.
  void fill_normals(double* dst, std::size_t count);
  void fill_units(double* dst, std::size_t count);
  double next_normal();

 private:
  std::array<std::uint32_t, 4> next_block();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  unsigned buf_pos_ = 4;  // 4 = empty
};

/// One raw 128-bit Philox block; exposed for the known-answer tests.
std::array<std::uint32_t, 4> philox_block(std::uint64_t seed,
                                          std::uint64_t stream,
                                          std::uint64_t counter) noexcept;

/// u64 -> (0,1] with 53-bit resolution.
inline double unit_from_bits(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace charpoly::rng

#endif
