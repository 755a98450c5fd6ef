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

#include "charpoly/hciz.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "charpoly/sampling.hpp"

namespace charpoly::hciz {

void HcizCase::validate() const {
  if (d < 1) throw std::invalid_argument("hciz: d >= 1 required");
  if (static_cast<int>(a_eigs.size()) != d ||
      static_cast<int>(b_eigs.size()) != d)
    throw std::invalid_argument("hciz: need d eigenvalues per matrix");
  for (const auto& eigs : {a_eigs, b_eigs})
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        if (eigs[j] == eigs[k])
          throw std::invalid_argument(
              "hciz: coinciding eigenvalues (the determinant formula "
              "degenerates)");
}

cplx hciz_closed_form(const HcizCase& c) {
  c.validate();
  if (c.d == 1) return std::exp(c.zscale * c.a_eigs[0] * c.b_eigs[0]);
  if (c.zscale == cplx(0.0)) return 1.0;

  const int d = c.d;
  ComplexMatrix e(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      e(j, k) = std::exp(c.zscale * c.a_eigs[j] * c.b_eigs[k]);
  LogComplex num = lu_logdet(e);
  if (num.is_zero()) return 0.0;

  LogComplex den = vandermonde(c.a_eigs) * vandermonde(c.b_eigs);
  const LogComplex zpow{0.5 * double(d) * (d - 1) *
                            std::log(std::abs(c.zscale)),
                        wrap_phase(0.5 * double(d) * (d - 1) *
                                   std::arg(c.zscale))};
  den = den * zpow;
  double prefac = 0.0;
  for (int j = 1; j < d; ++j) prefac += std::lgamma(double(j) + 1.0);
  const LogComplex out{num.log_mag - den.log_mag + prefac,
                       wrap_phase(num.phase - den.phase)};
  return out.value();
}

double closed_form_rel_error(const HcizCase& c) {
  c.validate();
  if (c.d == 1 || c.zscale == cplx(0.0)) return 0.0;
  const int d = c.d;
  ComplexMatrix e(d, d);
  double log_rows = 0.0;
  for (int j = 0; j < d; ++j) {
    double row2 = 0.0;
    for (int k = 0; k < d; ++k) {
      e(j, k) = std::exp(c.zscale * c.a_eigs[j] * c.b_eigs[k]);
      row2 += std::norm(e(j, k));
    }
    log_rows += 0.5 * std::log(row2);
  }
  const LogComplex det = lu_logdet(e);
  if (det.is_zero()) return std::numeric_limits<double>::infinity();
  constexpr double kEps = 2.220446049250313e-16;
  return double(d) * kEps * std::exp(log_rows - det.log_mag);
}

namespace {

cplx one_sample(const HcizCase& c, rng::Stream& stream) {
  const ComplexMatrix u = sampling::sample_haar_unitary(c.d, stream);
  // tr(A U* B U) with diagonal A, B: sum_{j,k} a_j b_k |u_{kj}|^2.
  cplx tr = 0.0;
  for (int k = 0; k < c.d; ++k)
    for (int j = 0; j < c.d; ++j)
      tr += c.a_eigs[j] * c.b_eigs[k] * std::norm(u(k, j));
  return std::exp(c.zscale * tr);
}

}  // namespace

std::vector<cplx> hciz_samples_serial(const HcizCase& c, std::uint64_t samples,
                                      std::uint64_t seed,
                                      std::uint64_t component_base) {
  c.validate();
  std::vector<cplx> out(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    rng::Stream s(seed, component_base + i);
    out[i] = one_sample(c, s);
  }
  return out;
}

std::vector<cplx> hciz_samples_parallel(const HcizCase& c,
                                        std::uint64_t samples,
                                        std::uint64_t seed,
                                        std::uint64_t component_base,
                                        int threads) {
  c.validate();
  std::vector<cplx> out(samples);
  const std::int64_t n = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic, 512) num_threads(std::max(1, threads))
  for (std::int64_t i = 0; i < n; ++i) {
    rng::Stream s(seed, component_base + std::uint64_t(i));
    out[i] = one_sample(c, s);
  }
  return out;
}

McEstimate hciz_mc(const HcizCase& c, std::uint64_t samples,
                   std::uint64_t seed, std::uint64_t component_base,
                   int threads) {
  if (samples < 2) throw std::invalid_argument("hciz_mc: samples >= 2");
  const auto vals =
      hciz_samples_parallel(c, samples, seed, component_base, threads);
  cplx sum = 0.0;
  for (const cplx& v : vals) sum += v;
  const cplx mean = sum / double(samples);
  double ss = 0.0;
  for (const cplx& v : vals) ss += std::norm(v - mean);
  McEstimate est;
  est.mean = mean;
  est.stderr_abs =
      std::sqrt(ss / double(samples - 1) / double(samples));
  est.samples = samples;
  return est;
}

namespace {

std::vector<cplx> disc_eigs_with_gap(int d, double min_gap,
                                     rng::Stream& stream) {
  std::vector<cplx> out;
  out.reserve(d);
  while (static_cast<int>(out.size()) < d) {
    double u[2];
    stream.fill_units(u, 2);
    const cplx cand(2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0);
    if (std::abs(cand) > 1.0) continue;
    bool ok = true;
    for (const cplx& e : out)
      if (std::abs(cand - e) < min_gap) ok = false;
    if (ok) out.push_back(cand);
  }
  return out;
}

}  // namespace

CheckReport hciz_check(int d, std::uint64_t trials, std::uint64_t samples,
                       std::uint64_t seed, int threads) {
  if (d < 2 || d > 3)
    throw std::invalid_argument("hciz_check: validated for d in {2, 3}");
  CheckReport rep;
  rep.d = d;
  rep.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    rng::Stream cfg_stream(seed, (std::uint64_t(d) << 32) | t);
    HcizCase c;
    c.d = d;
    c.zscale = 1.0;
    c.a_eigs = disc_eigs_with_gap(d, 0.2, cfg_stream);
    c.b_eigs = disc_eigs_with_gap(d, 0.2, cfg_stream);

    TrialResult res;
    res.trial_case = c;
    res.closed = hciz_closed_form(c);
    res.rel_error = closed_form_rel_error(c);
    res.ill_conditioned = res.rel_error > kIllConditioned;
    if (res.ill_conditioned) {
      ++rep.excluded;
      continue;
    }
    const std::uint64_t base = (std::uint64_t(1) << 32) * (t + 1);
    res.mc = hciz_mc(c, samples, seed, base, threads);
    res.z_abs = std::abs(res.closed - res.mc.mean) /
                std::max(res.mc.stderr_abs, 1e-300);
    res.pass = res.z_abs <= 4.0;
    if (res.pass)
      ++rep.passed;
    else
      rep.failures.push_back(res);
  }
  const std::uint64_t counted = rep.trials - rep.excluded;
  rep.ok = counted > 0 && 20 * rep.passed >= 19 * counted;  // >= 95%
  return rep;
}

}  // namespace charpoly::hciz
