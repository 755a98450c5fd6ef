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

// Box-Muller transform kernel, kept in its own translation unit so the
// vector math flags stay local. Results are a deterministic function of the
// input uniforms within one build of the library.

#include <cmath>
#include <cstddef>

namespace charpoly::rng {

void boxmuller_pairs(const double* units, double* dst, std::size_t pairs) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  constexpr std::size_t kBlock = 256;
  double r[kBlock], t[kBlock], c[kBlock], s[kBlock];
  std::size_t done = 0;
  while (done < pairs) {
    const std::size_t n = std::min(pairs - done, kBlock);
    const double* u = units + 2 * done;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = u[2 * i];
      t[i] = kTwoPi * u[2 * i + 1];
    }
    for (std::size_t i = 0; i < n; ++i) r[i] = std::sqrt(-2.0 * std::log(r[i]));
    for (std::size_t i = 0; i < n; ++i) c[i] = std::cos(t[i]);
    for (std::size_t i = 0; i < n; ++i) s[i] = std::sin(t[i]);
    double* o = dst + 2 * done;
    for (std::size_t i = 0; i < n; ++i) {
      o[2 * i] = r[i] * c[i];
      o[2 * i + 1] = r[i] * s[i];
    }
    done += n;
  }
}

}  // namespace charpoly::rng
