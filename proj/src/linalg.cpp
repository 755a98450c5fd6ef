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

#include "charpoly/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

extern "C" {
void zgetrf_(const int* m, const int* n, charpoly::cplx* a, const int* lda,
             int* ipiv, int* info);
}

namespace charpoly {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSkewTol = 1e-12;
}  // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
  ComplexMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const cplx xv = x(i, k);
      for (int j = 0; j < y.cols; ++j) r(i, j) += xv * y(k, j);
    }
  return r;
}

ComplexMatrix adjoint(const ComplexMatrix& x) {
  ComplexMatrix r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = std::conj(x(i, j));
  return r;
}

ComplexMatrix transpose(const ComplexMatrix& x) {
  ComplexMatrix r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

double max_abs(const ComplexMatrix& x) {
  double m = 0.0;
  for (const cplx& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

double wrap_phase(double phi) {
  double p = std::remainder(phi, 2.0 * kPi);
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

LogComplex LogComplex::from(cplx w) {
  const double mag = std::abs(w);
  if (mag == 0.0) return zero();
  return {std::log(mag), wrap_phase(std::arg(w))};
}

LogComplex LogComplex::zero() {
  return {-std::numeric_limits<double>::infinity(), 0.0};
}

bool LogComplex::is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

cplx LogComplex::value() const {
  if (is_zero()) return 0.0;
  const double mag = std::exp(log_mag);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

LogComplex LogComplex::operator*(const LogComplex& o) const {
  if (is_zero() || o.is_zero()) return zero();
  return {log_mag + o.log_mag, wrap_phase(phase + o.phase)};
}

LogComplex lu_logdet_inplace(cplx* a, int n, int* pivots) {
  if (n == 0) return {0.0, 0.0};
  int info = 0;
  zgetrf_(&n, &n, a, &n, pivots, &info);
  if (info < 0) throw std::runtime_error("lu_logdet: bad argument to zgetrf");
  if (info > 0) return LogComplex::zero();
  double logmag = 0.0, phase = 0.0;
  int swaps = 0;
  for (int i = 0; i < n; ++i) {
    if (pivots[i] != i + 1) ++swaps;
    const cplx d = a[std::size_t(i) * n + i];
    logmag += std::log(std::abs(d));
    phase += std::arg(d);
  }
  if (swaps & 1) phase += kPi;
  if (std::isinf(logmag) && logmag < 0) return LogComplex::zero();
  return {logmag, wrap_phase(phase)};
}

LogComplex lu_logdet(const ComplexMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("lu_logdet: not square");
  std::vector<cplx> work(m.a);
  std::vector<int> piv(m.rows);
  return lu_logdet_inplace(work.data(), m.rows, piv.data());
}

cplx pfaffian(const ComplexMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("pfaffian: not square");
  const int n = m.rows;
  if (n % 2 != 0) throw std::invalid_argument("pfaffian: odd dimension");
  double skew = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      skew = std::max(skew, std::abs(m(i, j) + m(j, i)));
  if (skew >= kSkewTol)
    throw std::invalid_argument("pfaffian: input is not skew-symmetric");
  if (n == 0) return 1.0;

  // Work on the exactly skew part.
  ComplexMatrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (m(i, j) - m(j, i));

  cplx pf = 1.0;
  std::vector<cplx> row(n), col(n);
  for (int k = 0; k + 1 < n; k += 2) {
    // Greedy pivot in column k.
    int p = k + 1;
    double best = std::abs(s(k + 1, k));
    for (int j = k + 2; j < n; ++j) {
      const double v = std::abs(s(j, k));
      if (v > best) {
        best = v;
        p = j;
      }
    }
    if (best == 0.0) return 0.0;
    if (p != k + 1) {
      for (int j = 0; j < n; ++j) std::swap(s(p, j), s(k + 1, j));
      for (int i = 0; i < n; ++i) std::swap(s(i, p), s(i, k + 1));
      pf = -pf;
    }
    pf *= s(k, k + 1);
    if (k + 2 >= n) break;
    // Congruence by a unit Gauss transform zeroes column k below row k+1;
    // the Pfaffian is unchanged.
    const cplx piv = s(k + 1, k);
    for (int j = k + 2; j < n; ++j) {
      row[j] = s(k + 1, j);
      col[j] = s(j, k + 1);
    }
    for (int j = k + 2; j < n; ++j) {
      const cplx tau = s(j, k) / piv;
      if (tau == cplx(0.0)) continue;
      for (int l = k + 2; l < n; ++l)
        s(j, l) -= tau * row[l];
    }
    for (int j = k + 2; j < n; ++j) {
      const cplx tau = s(j, k) / piv;
      if (tau == cplx(0.0)) continue;
      for (int l = k + 2; l < n; ++l)
        s(l, j) -= tau * col[l];
    }
  }
  return pf;
}

std::vector<std::pair<int, int>> index_pairs(int m) {
  std::vector<std::pair<int, int>> out;
  out.reserve(std::size_t(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) out.emplace_back(i, j);
  return out;
}

ComplexMatrix wedge2(const ComplexMatrix& m) {
  if (m.rows != m.cols || m.rows < 2)
    throw std::invalid_argument("wedge2: need a square matrix, size >= 2");
  const auto pairs = index_pairs(m.rows);
  const int d = static_cast<int>(pairs.size());
  ComplexMatrix w(d, d);
  for (int r = 0; r < d; ++r) {
    const auto [i, j] = pairs[r];
    for (int c = 0; c < d; ++c) {
      const auto [k, l] = pairs[c];
      w(r, c) = m(i, k) * m(j, l) - m(i, l) * m(j, k);
    }
  }
  return w;
}

LogComplex vandermonde(std::span<const cplx> zetas) {
  if (zetas.empty()) throw std::invalid_argument("vandermonde: empty input");
  LogComplex prod{0.0, 0.0};
  for (std::size_t j = 1; j < zetas.size(); ++j)
    for (std::size_t k = 0; k < j; ++k)
      prod = prod * LogComplex::from(zetas[j] - zetas[k]);
  return prod;
}

}  // namespace charpoly
