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

#include "charpoly/theory.hpp"

#include <cmath>

namespace charpoly::theory {

cplx SpectralConfig::z(int j) const {
  return z0 + zetas.at(j) / std::sqrt(double(n));
}

std::vector<cplx> SpectralConfig::shifted_points() const {
  std::vector<cplx> out(zetas.size());
  for (int j = 0; j < m(); ++j) out[j] = z(j);
  return out;
}

void SpectralConfig::validate(bool allow_confluent) const {
  if (zetas.empty())
    throw std::invalid_argument("spectral config: need at least one zeta");
  if (n < 1) throw std::invalid_argument("spectral config: n >= 1 required");
  if (!allow_confluent) {
    for (std::size_t j = 0; j < zetas.size(); ++j)
      for (std::size_t k = j + 1; k < zetas.size(); ++k)
        if (zetas[j] == zetas[k])
          throw std::invalid_argument(
              "spectral config: coinciding zetas (perturb one of them)");
  }
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::complex_exact: return "complex-exact";
    case Regime::interpolating: return "interpolating";
    case Regime::excluded: return "excluded";
  }
  return "?";
}

bool conditions_hold(cplx kappa20, cplx z0) {
  const double k = std::abs(kappa20);
  if (std::abs(z0) >= 1.0) return false;
  if (k < 1.0) return true;
  if (k == 1.0) return z0.imag() != 0.0;
  return false;
}

Regime classify_regime(cplx kappa20, cplx z0) {
  if (!conditions_hold(kappa20, z0)) return Regime::excluded;
  return kappa20 == cplx(0.0) ? Regime::complex_exact : Regime::interpolating;
}

cplx kernel_c(cplx z, cplx w) {
  return std::exp(-0.5 * std::norm(z) - 0.5 * std::norm(w) + z * std::conj(w));
}

double kernel_det_ratio(std::span<const cplx> zetas) {
  const int m = static_cast<int>(zetas.size());
  if (m < 1) throw std::invalid_argument("kernel_det_ratio: empty input");
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k)
      if (zetas[j] == zetas[k])
        throw std::invalid_argument(
            "kernel_det_ratio: coinciding zetas (caller must perturb)");
  if (m == 1) return 1.0;
  ComplexMatrix gram(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) gram(j, k) = kernel_c(zetas[j], zetas[k]);
  const LogComplex det = lu_logdet(gram);
  if (det.is_zero()) return 0.0;
  const LogComplex vand = vandermonde(zetas);
  // Gram determinant of a positive-definite kernel: real and >= 0.
  const double ratio = std::exp(det.log_mag - 2.0 * vand.log_mag);
  return std::cos(det.phase) < 0 ? 0.0 : ratio;
}

std::array<cplx, 4> kernel_r_block(cplx zj, cplx zk) {
  const cplx cj = std::conj(zj), ck = std::conj(zk);
  const double w = std::exp(-0.5 * std::norm(zj) - 0.5 * std::norm(zk));
  return {w * (zj - zk) * std::exp(zj * zk), w * (zj - ck) * std::exp(zj * ck),
          w * (cj - zk) * std::exp(cj * zk), w * (cj - ck) * std::exp(cj * ck)};
}

double cumulant22(double abs4, cplx kappa20) {
  if (abs4 < 0) throw std::invalid_argument("cumulant22: E|x|^4 < 0");
  return abs4 - std::norm(kappa20) - 2.0;
}

double fluctuation_det(cplx kappa20, cplx z0) {
  const double k = std::abs(kappa20);
  const double lam2 = 1.0 - std::norm(z0);
  return std::norm(cplx(1.0, 0.0) - k * z0 * z0) - k * k * lam2 * lam2;
}

double log_prefactor(cplx kappa20, double kappa22, cplx z0, int m) {
  const double det = fluctuation_det(kappa20, z0);
  if (det <= 0.0)
    throw ConditionViolation(
        "theorem conditions violated: the fluctuation determinant "
        "|1 - |kappa20| z0^2|^2 - |kappa20|^2 (1-|z0|^2)^2 must be positive");
  const double lam2 = 1.0 - std::norm(z0);
  return -double(m) * std::log(det) +
         0.5 * double(m) * (m - 1) * lam2 * lam2 * kappa22;
}

double f1_asymptotic_log(cplx z, int n) {
  if (n < 1) throw std::invalid_argument("f1_asymptotic_log: n >= 1");
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  return 0.5 * std::log(kTwoPi * n) + double(n) * (std::norm(z) - 1.0);
}

TheoryPrediction predict(const SpectralConfig& cfg, cplx kappa20,
                         double kappa22, bool force) {
  cfg.validate();
  TheoryPrediction p;
  p.regime = classify_regime(kappa20, cfg.z0);
  p.conditions_ok = p.regime != Regime::excluded;
  if (!p.conditions_ok && !force)
    throw ConditionViolation(
        "theorem conditions violated: need |kappa20| < 1 with |z0| < 1, or "
        "|kappa20| = 1 with |z0| < 1 and z0 not real");
  p.log_prefactor = log_prefactor(kappa20, kappa22, cfg.z0, cfg.m());
  p.kernel_ratio = kernel_det_ratio(cfg.zetas);
  p.log_ratio_mod_constant = p.log_prefactor + std::log(p.kernel_ratio);
  return p;
}

}  // namespace charpoly::theory
