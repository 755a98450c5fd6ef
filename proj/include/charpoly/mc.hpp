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

#ifndef CHARPOLY_MC_HPP
#define CHARPOLY_MC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "charpoly/sampling.hpp"
#include "charpoly/theory.hpp"

namespace charpoly::mc {

/// Stream ids are component_base + sample_index; component bases are spaced
/// by 1 << 40 so that no two components can overlap in sample index space.
constexpr std::uint64_t kComponentStride = std::uint64_t(1) << 40;

enum class Estimator { mean, median_of_means };

std::string to_string(Estimator e);
Estimator estimator_from_string(const std::string& s);

/// Log-domain Monte Carlo estimate of a positive expectation.
struct LogEstimate {
  double log_mean = 0;       // combined by `method`
  double log_mean_alt = 0;   // the other combine, kept as a heavy-tail guard
  double stderr_log = 0;
  std::uint64_t batches = 0;
  std::uint64_t samples_per_batch = 0;
  Estimator method = Estimator::mean;
};

/// One integrand draw: sum_j 2 log|det(M - z_j)|, one LU per shift.
/// Returns -inf on an exactly singular shift.
struct Workspace {
  std::vector<cplx> matrix;
  std::vector<cplx> shifted;
  std::vector<int> pivots;
  void resize(int n);
};

double log_fm_integrand(const sampling::EntryDistribution& dist,
                        const theory::SpectralConfig& cfg, rng::Stream& stream,
                        Workspace& ws);

/// Per-sample integrands for samples [0, count), sample i drawn from stream
/// (seed, component_base + i). The serial and parallel paths produce
/// bitwise-identical arrays.
std::vector<double> sample_integrands_serial(
    const sampling::EntryDistribution& dist, const theory::SpectralConfig& cfg,
    std::uint64_t seed, std::uint64_t component_base, std::uint64_t count);
std::vector<double> sample_integrands(const sampling::EntryDistribution& dist,
                                      const theory::SpectralConfig& cfg,
                                      std::uint64_t seed,
                                      std::uint64_t component_base,
                                      std::uint64_t count, int threads);

/// Batched log-mean-exp: per batch, a max-shifted log of the batch mean of
/// exp(values); batches are combined by the arithmetic mean (default) or the
/// median of the per-batch logs, with the standard error taken from the
/// batch dispersion. -inf values are allowed inside a batch (they contribute
/// zero weight); an all-(-inf) input throws.
LogEstimate estimate_log_expectation(std::span<const double> values,
                                     std::uint64_t batches,
                                     Estimator method = Estimator::mean);

struct RatioEstimate {
  double log_ratio = 0;  // log fm - sum_j log f1(z_j) - (m^2-m)/2 log n
  double stderr_total = 0;
  theory::SpectralConfig cfg;
  cplx kappa20;
  sampling::DistKind dist_kind = sampling::DistKind::gaussian;
  LogEstimate fm;
  std::vector<LogEstimate> f1;
  std::uint64_t singular_dropped = 0;
};

/// Raised when the sampler tripped a diagnostic (for now: singular-shift
/// rate above 0.01%).
struct EstimationDiagnostic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EstimateOptions {
  std::uint64_t samples = 100000;
  std::uint64_t batches = 8;
  std::uint64_t seed = 1;
  std::uint64_t component_base = 0;  // first component id, stride 1 per part
  Estimator estimator = Estimator::mean;
  int threads = 1;
  bool force = false;
};

/// Estimates log f_m and each log f_1(z_j) from independent substreams at
/// the same n and assembles the Theorem-ratio statistic in log form; the
/// standard error is propagated across the independent components. With
/// m = 1 the numerator and denominator share one estimate, so the ratio is
/// exactly zero. Throws theory::ConditionViolation in excluded regimes
/// unless opts.force.
RatioEstimate estimate_ratio(const sampling::EntryDistribution& dist,
                             const theory::SpectralConfig& cfg,
                             const EstimateOptions& opts);

struct FitResult {
  double fitted_log_c = 0;
  double stderr_fit = 0;
  std::vector<double> residuals;
};

/// Operationalizes the constancy claim: with >= 3 zeta-configurations at
/// common (m, z0, kappa20, dist), the fitted constant is the mean of
/// (measured log ratio - predicted log modulo constant) and the residuals
/// must be zeta-independent within error.
FitResult fit_constant(std::span<const RatioEstimate> ratios,
                       std::span<const theory::TheoryPrediction> predictions);

}  // namespace charpoly::mc

#endif
