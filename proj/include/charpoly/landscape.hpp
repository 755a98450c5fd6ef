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

#ifndef CHARPOLY_LANDSCAPE_HPP
#define CHARPOLY_LANDSCAPE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "charpoly/linalg.hpp"
#include "charpoly/rng.hpp"

namespace charpoly::landscape {

/// A point of the saddle objective's domain: the singular values Lambda,
/// the two skew coordinate blocks (upper triangles, lexicographic pair
/// order), and the norm of everything else, which enters only additively.
struct LandscapePoint {
  std::vector<double> lambdas;       // length m, each >= 0
  std::vector<cplx> b20;             // C(m,2) upper entries
  std::vector<cplx> b02;             // C(m,2) upper entries
  double q_rest_norm2 = 0.0;

  int m() const { return static_cast<int>(lambdas.size()); }
  static LandscapePoint zero(int m);
  /// Lambda = lambda0 I, skew blocks zero: the stationary point of the
  /// objective, lambda0 = sqrt(1 - |z0|^2).
  static LandscapePoint stationary(int m, cplx z0);

  /// Euclidean distance in the (Lambda, B, B, sqrt(q_rest)) coordinates.
  double distance_to(const LandscapePoint& o) const;
};

/// The 4m x 4m skew-symmetric matrix whose Pfaffian drives the saddle
/// objective. Skew-symmetric exactly by construction. The square root of
/// kappa20 is principal, and the conjugate block uses conj(sqrt(kappa20)).
ComplexMatrix saddle_matrix(const LandscapePoint& pt, cplx kappa20, cplx z0);

/// Re of the saddle objective: -(sum lambda^2 + |b20|^2 + |b02|^2 + q_rest)
/// + log|Pf|. Returns -inf at Pfaffian zeros. Each skew block's independent
/// upper-triangular entries are counted once in the norm.
double objective(const LandscapePoint& pt, cplx kappa20, cplx z0);

/// Global maximum value of the objective: m (|z0|^2 - 1).
double max_value(cplx z0, int m);

/// Minimal eigenvalue of the reduced 2x2 curvature form over both signs of
/// the coupling: (1 - |kappa20| Re z0^2) - |kappa20| (1 - |z0|^2).
double reduced_hessian_min_eig(cplx kappa20, cplx z0);
/// Same quantity obtained by eigensolving the two explicit 2x2 forms.
double reduced_hessian_min_eig_by_solver(cplx kappa20, cplx z0);

/// The chained upper bounds certifying the global maximum: each step of
///   Re f <= b_norm_drop <= b_hadamard <= b_linearized <= m(|z0|^2 - 1)
/// is independently assertable at any point.
struct BoundChain {
  double value;        // Re of the objective
  double norm_drop;    // after dropping -q_rest
  double hadamard;     // after Hadamard's inequality on the columns
  double linearized;   // after log x <= x - 1
  double global;       // m (|z0|^2 - 1)
};
BoundChain bound_chain(const LandscapePoint& pt, cplx kappa20, cplx z0);

struct FdReport {
  double grad_max_norm = 0;
  double hessian_max_eig = 0;
  double hessian_min_eig = 0;
};

/// Central finite differences of the objective over all real coordinates at
/// the stationary point; step must lie in [1e-6, 1e-3].
FdReport fd_stationarity(cplx kappa20, cplx z0, int m, double step);

struct SaddleReport {
  double max_found = 0;
  double max_theoretical = 0;
  double gap = 0;                 // max_theoretical - max_found
  double argmax_distance = 0;     // best probe to the stationary point
  double ascent_distance = 0;     // ascent endpoint to the stationary point
  double hessian_max_eig = 0;
  double hessian_min_eig = 0;
  std::uint64_t probes = 0;
  bool ok = false;
  std::string failure;
};

struct CertifyOptions {
  std::uint64_t trials = 100000;
  double radius = 3.0;
  std::uint64_t seed = 1;
  std::uint64_t stream_base = 0;
  int threads = 1;
  double fd_step = 1e-4;
  bool run_ascent = true;
};

/// Falsification harness for the global-maximum claim: random probes in a
/// ball plus deterministic probes, the bound check, a uniqueness check near
/// the top, a gradient-ascent run, and the finite-difference Hessian.
SaddleReport certify_global_max(cplx kappa20, cplx z0, int m,
                                const CertifyOptions& opt);

/// Serial reference for the probe scan; certify_global_max with threads > 1
/// must produce bitwise-identical probe values.
std::vector<double> probe_values_serial(cplx kappa20, cplx z0, int m,
                                        std::uint64_t trials, double radius,
                                        std::uint64_t seed,
                                        std::uint64_t stream_base);
std::vector<double> probe_values_parallel(cplx kappa20, cplx z0, int m,
                                          std::uint64_t trials, double radius,
                                          std::uint64_t seed,
                                          std::uint64_t stream_base,
                                          int threads);

/// The probe point for one (seed, stream) draw: Gaussian direction scaled
/// to a uniform-in-ball radius, lambdas folded nonnegative.
LandscapePoint random_point(int m, double radius, rng::Stream& stream);

}  // namespace charpoly::landscape

#endif
