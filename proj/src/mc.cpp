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

#include "charpoly/mc.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace charpoly::mc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(Estimator e) {
  return e == Estimator::mean ? "mean" : "median-of-means";
}

Estimator estimator_from_string(const std::string& s) {
  if (s == "mean") return Estimator::mean;
  if (s == "median-of-means") return Estimator::median_of_means;
  throw std::invalid_argument("unknown estimator: " + s);
}

void Workspace::resize(int n) {
  matrix.resize(std::size_t(n) * n);
  shifted.resize(std::size_t(n) * n);
  pivots.resize(n);
}

double log_fm_integrand(const sampling::EntryDistribution& dist,
                        const theory::SpectralConfig& cfg, rng::Stream& stream,
                        Workspace& ws) {
  const int n = cfg.n;
  ws.resize(n);
  sampling::sample_matrix_into(dist, n, stream, ws.matrix.data());
  double acc = 0.0;
  for (int j = 0; j < cfg.m(); ++j) {
    std::memcpy(ws.shifted.data(), ws.matrix.data(),
                ws.matrix.size() * sizeof(cplx));
    const cplx z = cfg.z(j);
    for (int i = 0; i < n; ++i) ws.shifted[std::size_t(i) * n + i] -= z;
    const LogComplex det =
        lu_logdet_inplace(ws.shifted.data(), n, ws.pivots.data());
    if (det.is_zero()) return -kInf;
    acc += 2.0 * det.log_mag;
  }
  return acc;
}

std::vector<double> sample_integrands_serial(
    const sampling::EntryDistribution& dist, const theory::SpectralConfig& cfg,
    std::uint64_t seed, std::uint64_t component_base, std::uint64_t count) {
  cfg.validate(/*allow_confluent=*/true);
  std::vector<double> out(count);
  Workspace ws;
  for (std::uint64_t i = 0; i < count; ++i) {
    rng::Stream s(seed, component_base + i);
    out[i] = log_fm_integrand(dist, cfg, s, ws);
  }
  return out;
}

std::vector<double> sample_integrands(const sampling::EntryDistribution& dist,
                                      const theory::SpectralConfig& cfg,
                                      std::uint64_t seed,
                                      std::uint64_t component_base,
                                      std::uint64_t count, int threads) {
  cfg.validate(/*allow_confluent=*/true);
  std::vector<double> out(count);
  const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel num_threads(std::max(1, threads))
  {
    Workspace ws;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
      rng::Stream s(seed, component_base + std::uint64_t(i));
      out[i] = log_fm_integrand(dist, cfg, s, ws);
    }
  }
  return out;
}

LogEstimate estimate_log_expectation(std::span<const double> values,
                                     std::uint64_t batches, Estimator method) {
  const std::uint64_t total = values.size();
  if (batches < 1) throw std::invalid_argument("need at least one batch");
  if (total < batches)
    throw std::invalid_argument("need at least one value per batch");

  const std::uint64_t per = total / batches;  // trailing remainder ignored
  std::vector<double> batch_logs(batches);
  bool any_finite = false;
  for (std::uint64_t b = 0; b < batches; ++b) {
    const double* v = values.data() + b * per;
    double mx = -kInf;
    for (std::uint64_t i = 0; i < per; ++i) mx = std::max(mx, v[i]);
    if (std::isinf(mx)) {
      batch_logs[b] = -kInf;
      continue;
    }
    double s = 0.0;
    for (std::uint64_t i = 0; i < per; ++i) s += std::exp(v[i] - mx);
    batch_logs[b] = mx + std::log(s / double(per));
    any_finite = true;
  }
  if (!any_finite)
    throw std::invalid_argument(
        "estimate_log_expectation: every value is -inf");

  LogEstimate est;
  est.batches = batches;
  est.samples_per_batch = per;
  est.method = method;
  double mean_combine = 0.0;
  for (double b : batch_logs) mean_combine += b;
  mean_combine /= double(batches);
  std::vector<double> sorted = batch_logs;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = sorted.size();
  const double median_combine =
      (k % 2 == 1) ? sorted[k / 2]
                   : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
  est.log_mean =
      method == Estimator::mean ? mean_combine : median_combine;
  est.log_mean_alt =
      method == Estimator::mean ? median_combine : mean_combine;
  if (batches >= 2) {
    double ss = 0.0;
    for (double b : batch_logs) {
      const double d = b - est.log_mean;
      ss += d * d;
    }
    est.stderr_log = std::sqrt(ss / double(batches - 1) / double(batches));
  }
  return est;
}

namespace {

LogEstimate estimate_component(const sampling::EntryDistribution& dist,
                               const theory::SpectralConfig& cfg,
                               std::uint64_t component,
                               const EstimateOptions& opts,
                               std::uint64_t* singular) {
  auto values = sample_integrands(dist, cfg, opts.seed,
                                  component * kComponentStride, opts.samples,
                                  opts.threads);
  // Exactly singular shifts are dropped and counted.
  std::uint64_t dropped = 0;
  std::vector<double> finite;
  finite.reserve(values.size());
  for (double v : values) {
    if (std::isinf(v) && v < 0)
      ++dropped;
    else
      finite.push_back(v);
  }
  *singular += dropped;
  if (dropped * 10000 > opts.samples)
    throw EstimationDiagnostic(
        "singular-shift rate above 0.01%: the sampler or the shifts are "
        "suspect");
  return estimate_log_expectation(finite, opts.batches, opts.estimator);
}

}  // namespace

RatioEstimate estimate_ratio(const sampling::EntryDistribution& dist,
                             const theory::SpectralConfig& cfg,
                             const EstimateOptions& opts) {
  cfg.validate();
  if (opts.samples < 1000)
    throw std::invalid_argument("estimate_ratio: samples >= 1000 required");
  if (!opts.force && !theory::conditions_hold(dist.kappa20, cfg.z0))
    throw theory::ConditionViolation(
        "theorem conditions violated: need |kappa20| < 1 with |z0| < 1, or "
        "|kappa20| = 1 with |z0| < 1 and z0 not real (--force overrides)");

  RatioEstimate r;
  r.cfg = cfg;
  r.kappa20 = dist.kappa20;
  r.dist_kind = dist.kind;

  const int m = cfg.m();
  r.fm = estimate_component(dist, cfg, opts.component_base, opts,
                            &r.singular_dropped);
  r.f1.reserve(m);
  for (int j = 0; j < m; ++j) {
    if (m == 1) {
      r.f1.push_back(r.fm);  // same statistic, shared samples
      break;
    }
    theory::SpectralConfig one;
    one.z0 = cfg.z0;
    one.n = cfg.n;
    one.zetas = {cfg.zetas[j]};
    r.f1.push_back(estimate_component(dist, one,
                                      opts.component_base + 1 + j, opts,
                                      &r.singular_dropped));
  }

  double log_ratio = r.fm.log_mean;
  double var = r.fm.stderr_log * r.fm.stderr_log;
  for (int j = 0; j < m; ++j) {
    log_ratio -= r.f1[j].log_mean;
    if (m > 1) var += r.f1[j].stderr_log * r.f1[j].stderr_log;
  }
  log_ratio -= 0.5 * double(m) * (m - 1) * std::log(double(cfg.n));
  r.log_ratio = (m == 1) ? 0.0 : log_ratio;
  r.stderr_total = (m == 1) ? 0.0 : std::sqrt(var);
  return r;
}

FitResult fit_constant(std::span<const RatioEstimate> ratios,
                       std::span<const theory::TheoryPrediction> predictions) {
  if (ratios.size() != predictions.size())
    throw std::invalid_argument("fit_constant: length mismatch");
  if (ratios.size() < 3)
    throw std::invalid_argument(
        "fit_constant: need at least 3 zeta-configurations");
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (ratios[i].cfg.m() != ratios[0].cfg.m() ||
        ratios[i].kappa20 != ratios[0].kappa20 ||
        ratios[i].cfg.z0 != ratios[0].cfg.z0 ||
        ratios[i].dist_kind != ratios[0].dist_kind)
      throw std::invalid_argument(
          "fit_constant: mixed (m, z0, kappa20, dist) families");
  }
  FitResult fit;
  double s = 0.0, var = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    s += ratios[i].log_ratio - predictions[i].log_ratio_mod_constant;
    var += ratios[i].stderr_total * ratios[i].stderr_total;
  }
  fit.fitted_log_c = s / double(ratios.size());
  fit.stderr_fit = std::sqrt(var) / double(ratios.size());
  fit.residuals.resize(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i)
    fit.residuals[i] = ratios[i].log_ratio -
                       predictions[i].log_ratio_mod_constant -
                       fit.fitted_log_c;
  return fit;
}

}  // namespace charpoly::mc
