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

#include "charpoly/rng.hpp"

namespace charpoly::rng {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox_block(std::uint64_t seed,
                                          std::uint64_t stream,
                                          std::uint64_t counter) noexcept {
  std::uint32_t c0 = static_cast<std::uint32_t>(counter);
  std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(stream);
  std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMulA, c0, hi0, lo0);
    mulhilo(kMulB, c2, hi1, lo1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
    k0 += kWeylA;
    k1 += kWeylB;
  }
  return {c0, c1, c2, c3};
}

std::array<std::uint32_t, 4> Stream::next_block() {
  return philox_block(seed_, stream_, counter_++);
}

std::uint32_t Stream::next_u32() {
  if (buf_pos_ >= 4) {
    buf_ = next_block();
    buf_pos_ = 0;
  }
  return buf_[buf_pos_++];
}

std::uint64_t Stream::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double Stream::next_unit() { return unit_from_bits(next_u64()); }

void Stream::fill_units(double* dst, std::size_t count) {
  std::size_t i = 0;
  // Whole blocks give two doubles each; leftovers go through the buffer.
  for (; i + 2 <= count; i += 2) {
    const auto b = next_block();
    dst[i] = unit_from_bits((static_cast<std::uint64_t>(b[1]) << 32) | b[0]);
    dst[i + 1] =
        unit_from_bits((static_cast<std::uint64_t>(b[3]) << 32) | b[2]);
  }
  if (i < count) dst[i] = next_unit();
}

// Implemented in normals.cpp (built with vector-math flags).
void boxmuller_pairs(const double* units, double* dst, std::size_t pairs);

void Stream::fill_normals(double* dst, std::size_t count) {
  constexpr std::size_t kChunk = 512;  // even
  double units[kChunk];
  std::size_t done = 0;
  while (done < count) {
    const std::size_t want = count - done;
    const std::size_t n = want < kChunk ? want : kChunk;
    const std::size_t gen = (n + 1) & ~std::size_t(1);  // round up to even
    fill_units(units, gen);
    if (n == gen) {
      boxmuller_pairs(units, dst + done, n / 2);
    } else {
      double pair[2];
      boxmuller_pairs(units, dst + done, n / 2);
      boxmuller_pairs(units + n - 1, pair, 1);
      dst[done + n - 1] = pair[0];
    }
    done += n;
  }
}

double Stream::next_normal() {
  double u[2], z[2];
  fill_units(u, 2);
  boxmuller_pairs(u, z, 1);
  return z[0];
}

}  // namespace charpoly::rng
