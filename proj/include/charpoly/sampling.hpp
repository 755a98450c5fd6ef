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

#ifndef CHARPOLY_SAMPLING_HPP
#define CHARPOLY_SAMPLING_HPP

#include <cstdint>
#include <string>

#include "charpoly/linalg.hpp"
#include "charpoly/rng.hpp"

namespace charpoly::sampling {

enum class DistKind { gaussian, rademacher_pair, uniform_pair };

std::string to_string(DistKind k);
DistKind dist_kind_from_string(const std::string& s);

/// One matrix entry law with prescribed moments
///   E x = 0,  E|x|^2 = 1,  E x^2 = kappa20  (|kappa20| <= 1).
///
/// Realized as x = e^{i theta/2} (sigma1 g1 + i sigma2 g2) with
/// theta = arg kappa20, sigma1^2 = (1+|kappa20|)/2, sigma2^2 = (1-|kappa20|)/2
/// and (g1, g2) i.i.d. unit-variance real draws of the chosen kind:
/// standard normal, +-1 signs, or uniform on [-sqrt(3), sqrt(3)].
struct EntryDistribution {
  DistKind kind;
  cplx kappa20;
  double kappa22;  // E|x|^4 - |kappa20|^2 - 2, from the kind's closed form
  cplx rotation;   // e^{i theta/2}
  double sigma1;
  double sigma2;

  cplx sample(rng::Stream& stream) const;
  /// Fills count entries, each scaled by `scale`; one bulk draw path so a
  /// given stream always yields the same entries.
  void fill(rng::Stream& stream, cplx* dst, std::size_t count,
            double scale = 1.0) const;
};

/// Throws std::invalid_argument when |kappa20| > 1.
EntryDistribution make_distribution(DistKind kind, cplx kappa20);

/// n x n matrix with i.i.d. entries x_jk / sqrt(n).
ComplexMatrix sample_matrix(const EntryDistribution& dist, int n,
                            rng::Stream& stream);
void sample_matrix_into(const EntryDistribution& dist, int n,
                        rng::Stream& stream, cplx* dst);

/// Haar-distributed U(d) draw: QR of a complex Ginibre matrix with the R
/// diagonal phases pulled into Q, which makes the factorization unique.
ComplexMatrix sample_haar_unitary(int d, rng::Stream& stream);

struct MomentReport {
  std::uint64_t count = 0;
  cplx mean;             // E x
  double se_mean = 0;    // combined re/im standard error
  double abs2 = 0;       // E |x|^2
  double se_abs2 = 0;
  cplx second;           // E x^2
  double se_second = 0;
  double abs4 = 0;       // E |x|^4
  double se_abs4 = 0;

  /// 4-sigma gates on the three defining moment identities.
  bool within_gates(cplx kappa20) const;
};

/// Sample moments over `count` draws (count >= 1000).
MomentReport empirical_moments(const EntryDistribution& dist,
                               std::uint64_t count, rng::Stream& stream);

}  // namespace charpoly::sampling

#endif
