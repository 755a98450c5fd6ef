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

// Brute-force oracles kept independent of the library implementations they
// check: cofactor determinants, the recursive Pfaffian definition, the
// finite-n closed form of the Ginibre one-point function, and a two-sample
// KS distance.

#ifndef CHARPOLY_TESTS_ORACLES_HPP
#define CHARPOLY_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "charpoly/linalg.hpp"

namespace oracles {

using charpoly::cplx;
using charpoly::ComplexMatrix;

/// Cofactor-expansion determinant, O(n!), for n <= ~6.
inline cplx cofactor_det(const ComplexMatrix& m) {
  const int n = m.rows;
  if (n == 1) return m(0, 0);
  cplx det = 0.0;
  for (int j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    const cplx term = m(0, j) * cofactor_det(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

/// Pfaffian by the recursive first-row expansion
///   Pf(A) = sum_{j>0} (-1)^j a_{0j} Pf(A with rows/cols 0 and j removed).
inline cplx pfaffian_recursive(const ComplexMatrix& m) {
  const int n = m.rows;
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  if (n == 2) return m(0, 1);
  cplx pf = 0.0;
  for (int j = 1; j < n; ++j) {
    ComplexMatrix minor(n - 2, n - 2);
    int rr = 0;
    for (int r = 1; r < n; ++r) {
      if (r == j) continue;
      int cc = 0;
      for (int c = 1; c < n; ++c) {
        if (c == j) continue;
        minor(rr, cc++) = m(r, c);
      }
      ++rr;
    }
    const cplx term = m(0, j) * pfaffian_recursive(minor);
    pf += (j % 2 == 1) ? term : -term;
  }
  return pf;
}

/// Exact E prod |det(M_n - z)|^2 at m = 1 for the complex Ginibre law
/// (i.i.d. CN(0, 1/n) entries):
///   log f1 = logsumexp_k [ lgamma(n+1) - lgamma(k+1) + (k-n) log n
///                          + k log |z|^2 ].
inline double log_f1_exact_ginc(int n, double abs_z2) {
  std::vector<double> terms;
  terms.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (abs_z2 == 0.0 && k > 0) break;
    double t = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) +
               (k - n) * std::log(double(n));
    if (k > 0) t += k * std::log(abs_z2);
    terms.push_back(t);
  }
  const double mx = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - mx);
  return mx + std::log(s);
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace oracles

#endif
