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

#ifndef CHARPOLY_VERIFY_HPP
#define CHARPOLY_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "charpoly/linalg.hpp"

namespace charpoly::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

using PfaffianFn = std::function<cplx(const ComplexMatrix&)>;

/// Pfaffian and exterior-power property suite: Pf^2 = det over random skew
/// matrices (dims 2..12, 200 each), congruence covariance, wedge2
/// multiplicativity/unitarity, the mutually-inverse trace identity, and
/// logdet vs cofactor expansion. The pfaffian under test is injectable so a
/// corrupted implementation is caught by name.
std::vector<CheckResult> check_matalg(std::uint64_t seed,
                                      PfaffianFn pf = nullptr);

/// Haar unitarity residuals up to d = 64, left-invariance statistics, and
/// the 4-sigma moment gates for representative entry distributions.
std::vector<CheckResult> check_sampling(std::uint64_t seed);

/// Closed form vs Haar Monte Carlo for d = 2, 3.
std::vector<CheckResult> check_hciz(std::uint64_t seed, std::uint64_t trials,
                                    std::uint64_t samples_d2,
                                    std::uint64_t samples_d3, int threads);

/// Saddle certification across random parameter draws in both validity
/// sub-regimes.
struct LandscapeSizes {
  int pairs_interior = 10;   // |kappa20| < 1 draws
  int pairs_boundary = 5;    // |kappa20| = 1 draws
  std::uint64_t trials = 100000;
  double radius = 3.0;
  int threads = 1;
  std::vector<int> m_values = {2, 3};
};
std::vector<CheckResult> check_landscape(std::uint64_t seed,
                                         const LandscapeSizes& sizes);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace charpoly::verify

#endif
