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

#ifndef CHARPOLY_THEORY_HPP
#define CHARPOLY_THEORY_HPP

#include <array>
#include <stdexcept>
#include <vector>

#include "charpoly/linalg.hpp"

namespace charpoly::theory {

/// Observation window: spectral parameters z_j = z0 + zeta_j / sqrt(n).
struct SpectralConfig {
  cplx z0;
  std::vector<cplx> zetas;
  int n = 0;

  int m() const { return static_cast<int>(zetas.size()); }
  cplx z(int j) const;
  std::vector<cplx> shifted_points() const;

  /// m >= 1, n >= 1, and pairwise distinct zetas unless allow_confluent.
  void validate(bool allow_confluent = false) const;
};

enum class Regime { complex_exact, interpolating, excluded };

std::string to_string(Regime r);

/// Validity region of the limit formula:
///  (i) |kappa20| < 1 and |z0| < 1, or
/// (ii) |kappa20| = 1 and |z0| < 1 with z0 not real.
bool conditions_hold(cplx kappa20, cplx z0);

Regime classify_regime(cplx kappa20, cplx z0);

/// Thrown when parameters leave the validity region.
struct ConditionViolation : std::domain_error {
  using std::domain_error::domain_error;
};

/// Gaussian reproducing kernel e^{-|z|^2/2 - |w|^2/2 + z conj(w)}.
cplx kernel_c(cplx z, cplx w);

/// det( kernel_c(zeta_j, zeta_k) ) / |vandermonde|^2, a nonnegative Gram
/// ratio. Throws on coinciding zetas.
double kernel_det_ratio(std::span<const cplx> zetas);

/// Reference 2x2 block of the real-case kernel:
///   e^{-|zj|^2/2 - |zk|^2/2} * [ (zj-zk)e^{zj zk}        (zj-ck)e^{zj ck} ;
///                                (cj-zk)e^{cj zk}        (cj-ck)e^{cj ck} ]
/// with c = conj(z).
std::array<cplx, 4> kernel_r_block(cplx zj, cplx zk);

/// kappa22 = E|x|^4 - |kappa20|^2 - 2.
double cumulant22(double abs4, cplx kappa20);

/// |1 - |kappa20| z0^2|^2 - |kappa20|^2 (1 - |z0|^2)^2 : the Gaussian
/// fluctuation determinant of the skew coordinate block; the limit formula
/// requires it positive.
double fluctuation_det(cplx kappa20, cplx z0);

/// -m log(fluctuation_det) + (m^2-m)/2 (1-|z0|^2)^2 kappa22.
/// Throws ConditionViolation when the log argument is <= 0.
double log_prefactor(cplx kappa20, double kappa22, cplx z0, int m);

/// Leading log-asymptotic of the one-point function:
///   (1/2) log(2 pi n) + n (|z|^2 - 1).
double f1_asymptotic_log(cplx z, int n);

struct TheoryPrediction {
  double log_ratio_mod_constant = 0;  // log_prefactor + log kernel_det_ratio
  double kernel_ratio = 0;
  double log_prefactor = 0;
  bool conditions_ok = false;
  Regime regime = Regime::excluded;
};

/// Predicted limit of n^{-(m^2-m)/2} f_m / (f_1 ... f_1), in log form and
/// modulo the overall constant (which is exactly 1 in the complex-exact
/// regime kappa20 = 0). Throws ConditionViolation outside the validity
/// region unless `force`; always throws if the prefactor log is undefined.
TheoryPrediction predict(const SpectralConfig& cfg, cplx kappa20,
                         double kappa22, bool force = false);

}  // namespace charpoly::theory

#endif
