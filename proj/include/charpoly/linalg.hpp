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

#ifndef CHARPOLY_LINALG_HPP
#define CHARPOLY_LINALG_HPP

#include <complex>
#include <span>
#include <vector>

namespace charpoly {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}

  cplx& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
  const cplx& operator()(int i, int j) const {
    return a[std::size_t(i) * cols + j];
  }

  static ComplexMatrix identity(int n);
};

ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix adjoint(const ComplexMatrix& x);
ComplexMatrix transpose(const ComplexMatrix& x);

/// max_ij |x_ij - y_ij|
double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y);
/// max_ij |x_ij|
double max_abs(const ComplexMatrix& x);

/// A nonzero complex number carried as exp(log_mag) * exp(i*phase), the
/// overflow-safe currency for determinants whose magnitude is exp(O(n)).
/// Exact zero is encoded as log_mag = -inf with phase 0.
struct LogComplex {
  double log_mag = 0.0;
  double phase = 0.0;  // in (-pi, pi]

  static LogComplex from(cplx w);
  static LogComplex zero();

  bool is_zero() const;
  cplx value() const;  // may overflow to inf for large log_mag
  LogComplex operator*(const LogComplex& o) const;
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phi);

/// det(A) via LU with partial pivoting (LAPACK zgetrf), in log form.
/// Exactly singular input yields LogComplex::zero(). Throws on non-square.
LogComplex lu_logdet(const ComplexMatrix& m);

/// In-place variant on a raw n*n buffer; `pivots` must hold n ints.
/// The buffer is clobbered. zgetrf sees the column-major transpose of our
/// row-major data; det(A^T) = det(A), so no copy is needed.
LogComplex lu_logdet_inplace(cplx* a, int n, int* pivots);

/// Pfaffian of an even-dimensional skew-symmetric matrix by Parlett-Reid
/// tridiagonalization with greedy pivoting (cf. Wimmer, arXiv:1102.3440).
/// Input must satisfy max|A + A^T| < 1e-12; it is symmetrized to
/// (A - A^T)/2 before factorization. Satisfies Pf(A)^2 = det(A).
cplx pfaffian(const ComplexMatrix& m);

/// Second exterior power: the C(m,2) x C(m,2) matrix of all 2x2 minors,
/// rows/columns indexed by lexicographically ordered pairs
/// (1,2) < (1,3) < ... < (m-1,m).
ComplexMatrix wedge2(const ComplexMatrix& m);

/// prod_{j>k} (z_j - z_k); the empty product (length 1) is 1.
/// Coinciding entries give exact zero.
LogComplex vandermonde(std::span<const cplx> zetas);

/// Lexicographic index pairs (i,j), i < j, 0-based.
std::vector<std::pair<int, int>> index_pairs(int m);

}  // namespace charpoly

#endif
