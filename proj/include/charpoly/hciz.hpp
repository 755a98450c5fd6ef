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

#ifndef CHARPOLY_HCIZ_HPP
#define CHARPOLY_HCIZ_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "charpoly/linalg.hpp"
#include "charpoly/rng.hpp"

namespace charpoly::hciz {

/// Inputs of the unitary-group integral
///   I(z; A, B) = int_{U(d)} exp(z tr A U* B U) dmu(U)
/// with A, B normal; by unitary invariance only the (distinct) eigenvalues
/// matter, so diagonal matrices are sampled without loss of generality.
struct HcizCase {
  int d = 1;
  std::vector<cplx> a_eigs;
  std::vector<cplx> b_eigs;
  cplx zscale = 1.0;

  void validate() const;  // distinct eigenvalues within each list
};

/// Closed form:
///   (prod_{j=1}^{d-1} j!) det{e^{z a_j b_k}} / (z^{(d^2-d)/2} vdm(A) vdm(B)).
/// z = 0 with d >= 2 is handled as the exact special value 1 (the formula
/// itself is singular there, the integral is not).
cplx hciz_closed_form(const HcizCase& c);

struct McEstimate {
  cplx mean;
  double stderr_abs = 0;  // combined re/im standard error
  std::uint64_t samples = 0;
};

/// Haar Monte Carlo average of exp(z tr A U*BU); sample i uses the stream
/// (seed, component_base + i). Serial and parallel paths agree bitwise on
/// the per-sample values.
McEstimate hciz_mc(const HcizCase& c, std::uint64_t samples,
                   std::uint64_t seed, std::uint64_t component_base,
                   int threads);
std::vector<cplx> hciz_samples_serial(const HcizCase& c,
                                      std::uint64_t samples,
                                      std::uint64_t seed,
                                      std::uint64_t component_base);
std::vector<cplx> hciz_samples_parallel(const HcizCase& c,
                                        std::uint64_t samples,
                                        std::uint64_t seed,
                                        std::uint64_t component_base,
                                        int threads);

/// Estimated relative floating-point error of the closed form: the 0/0
/// structure near coinciding eigenvalues cancels digits in the determinant;
/// this returns d * eps * (prod of row norms / |det|), the Hadamard bound on
/// the cancellation.
double closed_form_rel_error(const HcizCase& c);

/// Flag threshold used by hciz_check to exclude near-degenerate cases.
inline constexpr double kIllConditioned = 1e-10;

struct TrialResult {
  HcizCase trial_case;
  cplx closed;
  McEstimate mc;
  double z_abs = 0;  // |closed - mc| / stderr
  double rel_error = 0;
  bool ill_conditioned = false;
  bool pass = false;
};

struct CheckReport {
  int d = 0;
  std::uint64_t trials = 0;
  std::uint64_t passed = 0;
  std::uint64_t excluded = 0;  // ill-conditioned closed forms
  bool ok = false;
  std::vector<TrialResult> failures;
};

/// Validation harness: random unit-disc eigenvalue configurations with a
/// minimum pairwise gap of 0.2, closed form vs Monte Carlo, pass iff
/// |closed - mc| <= 4 stderr in at least 95% of trials.
CheckReport hciz_check(int d, std::uint64_t trials, std::uint64_t samples,
                       std::uint64_t seed, int threads);

}  // namespace charpoly::hciz

#endif
