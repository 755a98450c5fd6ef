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

#include "charpoly/sampling.hpp"

#include <cmath>
#include <stdexcept>

extern "C" {
void zgeqrf_(const int* m, const int* n, charpoly::cplx* a, const int* lda,
             charpoly::cplx* tau, charpoly::cplx* work, const int* lwork,
             int* info);
void zungqr_(const int* m, const int* n, const int* k, charpoly::cplx* a,
             const int* lda, const charpoly::cplx* tau, charpoly::cplx* work,
             const int* lwork, int* info);
}

namespace charpoly::sampling {

std::string to_string(DistKind k) {
  switch (k) {
    case DistKind::gaussian: return "gaussian";
    case DistKind::rademacher_pair: return "rademacher-pair";
    case DistKind::uniform_pair: return "uniform-pair";
  }
  return "?";
}

DistKind dist_kind_from_string(const std::string& s) {
  if (s == "gaussian") return DistKind::gaussian;
  if (s == "rademacher-pair") return DistKind::rademacher_pair;
  if (s == "uniform-pair") return DistKind::uniform_pair;
  throw std::invalid_argument("unknown distribution kind: " + s);
}

EntryDistribution make_distribution(DistKind kind, cplx kappa20) {
  const double r = std::abs(kappa20);
  if (r > 1.0 + 1e-15)
    throw std::invalid_argument(
        "make_distribution: |kappa20| > 1 has no valid entry law "
        "(|E x^2| <= E |x|^2 = 1)");
  const double theta = (r == 0.0) ? 0.0 : std::arg(kappa20);
  EntryDistribution d;
  d.kind = kind;
  d.kappa20 = kappa20;
  d.rotation = std::polar(1.0, theta / 2.0);
  d.sigma1 = std::sqrt((1.0 + r) / 2.0);
  d.sigma2 = std::sqrt(std::max(0.0, (1.0 - r) / 2.0));
  // Fourth absolute moment per kind: E|x|^4 = mu4 (sigma1^4 + sigma2^4)
  // + 2 sigma1^2 sigma2^2 with mu4 = E g^4 of the real draw.
  double mu4;
  switch (kind) {
    case DistKind::gaussian: mu4 = 3.0; break;
    case DistKind::rademacher_pair: mu4 = 1.0; break;
    case DistKind::uniform_pair: mu4 = 9.0 / 5.0; break;
    default: throw std::invalid_argument("make_distribution: unknown kind");
  }
  const double s12 = d.sigma1 * d.sigma1, s2s = d.sigma2 * d.sigma2;
  const double abs4 = mu4 * (s12 * s12 + s2s * s2s) + 2.0 * s12 * s2s;
  d.kappa22 = abs4 - r * r - 2.0;
  return d;
}

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

inline cplx combine(const EntryDistribution& d, double g1, double g2) {
  return d.rotation * cplx(d.sigma1 * g1, d.sigma2 * g2);
}

}  // namespace

void EntryDistribution::fill(rng::Stream& stream, cplx* dst, std::size_t count,
                             double scale) const {
  switch (kind) {
    case DistKind::gaussian: {
      constexpr std::size_t kChunk = 1024;
      double g[2 * kChunk];
      std::size_t done = 0;
      while (done < count) {
        const std::size_t n = std::min(count - done, kChunk);
        stream.fill_normals(g, 2 * n);
        for (std::size_t i = 0; i < n; ++i)
          dst[done + i] = scale * combine(*this, g[2 * i], g[2 * i + 1]);
        done += n;
      }
      break;
    }
    case DistKind::rademacher_pair: {
      // Two sign bits per entry, 32 entries per u64.
      std::uint64_t bits = 0;
      unsigned left = 0;
      for (std::size_t i = 0; i < count; ++i) {
        if (left == 0) {
          bits = stream.next_u64();
          left = 32;
        }
        const double g1 = (bits & 1u) ? 1.0 : -1.0;
        const double g2 = (bits & 2u) ? 1.0 : -1.0;
        bits >>= 2;
        --left;
        dst[i] = scale * combine(*this, g1, g2);
      }
      break;
    }
    case DistKind::uniform_pair: {
      constexpr std::size_t kChunk = 1024;
      double u[2 * kChunk];
      std::size_t done = 0;
      while (done < count) {
        const std::size_t n = std::min(count - done, kChunk);
        stream.fill_units(u, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
          const double g1 = kSqrt3 * (2.0 * u[2 * i] - 1.0);
          const double g2 = kSqrt3 * (2.0 * u[2 * i + 1] - 1.0);
          dst[done + i] = scale * combine(*this, g1, g2);
        }
        done += n;
      }
      break;
    }
  }
}

cplx EntryDistribution::sample(rng::Stream& stream) const {
  cplx x;
  fill(stream, &x, 1);
  return x;
}

void sample_matrix_into(const EntryDistribution& dist, int n,
                        rng::Stream& stream, cplx* dst) {
  if (n < 1) throw std::invalid_argument("sample_matrix: n >= 1 required");
  dist.fill(stream, dst, std::size_t(n) * n, 1.0 / std::sqrt(double(n)));
}

ComplexMatrix sample_matrix(const EntryDistribution& dist, int n,
                            rng::Stream& stream) {
  ComplexMatrix m(n, n);
  sample_matrix_into(dist, n, stream, m.a.data());
  return m;
}

ComplexMatrix sample_haar_unitary(int d, rng::Stream& stream) {
  if (d < 1) throw std::invalid_argument("sample_haar_unitary: d >= 1");
  // Column-major workspace for LAPACK; a Ginibre draw is invariant under
  // transposition in law, so the layout does not matter statistically.
  std::vector<cplx> a(std::size_t(d) * d);
  {
    std::vector<double> g(2 * a.size());
    stream.fill_normals(g.data(), g.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = cplx(g[2 * i], g[2 * i + 1]);
  }
  std::vector<cplx> tau(d);
  int info = 0, lwork = -1;
  cplx wq;
  zgeqrf_(&d, &d, a.data(), &d, tau.data(), &wq, &lwork, &info);
  lwork = static_cast<int>(wq.real());
  std::vector<cplx> work(lwork);
  zgeqrf_(&d, &d, a.data(), &d, tau.data(), work.data(), &lwork, &info);
  if (info != 0) throw std::runtime_error("sample_haar_unitary: zgeqrf failed");

  // R's diagonal phases, taken before the reflectors are expanded.
  std::vector<cplx> phase(d);
  for (int j = 0; j < d; ++j) {
    const cplx r = a[std::size_t(j) * d + j];
    const double m = std::abs(r);
    phase[j] = (m == 0.0) ? cplx(1.0, 0.0) : r / m;
  }

  lwork = -1;
  zungqr_(&d, &d, &d, a.data(), &d, tau.data(), &wq, &lwork, &info);
  lwork = static_cast<int>(wq.real());
  work.resize(lwork);
  zungqr_(&d, &d, &d, a.data(), &d, tau.data(), work.data(), &lwork, &info);
  if (info != 0) throw std::runtime_error("sample_haar_unitary: zungqr failed");

  // A = QR = (Q Phi)(Phi^* R); Q Phi is the factor whose R has a real
  // positive diagonal.
  ComplexMatrix u(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      u(i, j) = a[std::size_t(j) * d + i] * phase[j];
  return u;
}

bool MomentReport::within_gates(cplx kappa20) const {
  // |sample mean - target| <= 4 * (sample std / sqrt(N)) per moment, with a
  // small absolute cushion for identities that hold to rounding (zero se).
  constexpr double kEps = 1e-12;
  return std::abs(mean) <= 4.0 * se_mean + kEps &&
         std::abs(abs2 - 1.0) <= 4.0 * se_abs2 + kEps &&
         std::abs(second - kappa20) <= 4.0 * se_second + kEps;
}

MomentReport empirical_moments(const EntryDistribution& dist,
                               std::uint64_t count, rng::Stream& stream) {
  if (count < 1000)
    throw std::invalid_argument("empirical_moments: count >= 1000 required");
  MomentReport r;
  r.count = count;
  cplx sum_x = 0, sum_x2 = 0;
  double sum_a2 = 0, sum_a4 = 0;
  double ss_re = 0, ss_im = 0, ss_a2 = 0, ss_a4 = 0;
  double ss_x2re = 0, ss_x2im = 0;

  constexpr std::size_t kChunk = 4096;
  std::vector<cplx> buf(kChunk);
  std::uint64_t done = 0;
  while (done < count) {
    const std::size_t n =
        static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, count - done));
    dist.fill(stream, buf.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx x = buf[i];
      const double a2 = std::norm(x);
      const cplx x2 = x * x;
      sum_x += x;
      sum_a2 += a2;
      sum_x2 += x2;
      sum_a4 += a2 * a2;
      ss_re += x.real() * x.real();
      ss_im += x.imag() * x.imag();
      ss_a2 += a2 * a2;
      ss_a4 += a2 * a2 * a2 * a2;
      ss_x2re += x2.real() * x2.real();
      ss_x2im += x2.imag() * x2.imag();
    }
    done += n;
  }
  const double n = static_cast<double>(count);
  auto se = [n](double ss, double mean) {
    const double var = std::max(0.0, ss / n - mean * mean);
    return std::sqrt(var / n);
  };
  r.mean = sum_x / n;
  r.abs2 = sum_a2 / n;
  r.second = sum_x2 / n;
  r.abs4 = sum_a4 / n;
  const double se_re = se(ss_re, r.mean.real());
  const double se_im = se(ss_im, r.mean.imag());
  r.se_mean = std::hypot(se_re, se_im);
  r.se_abs2 = se(ss_a2, r.abs2);
  r.se_abs4 = se(ss_a4, r.abs4);
  r.se_second =
      std::hypot(se(ss_x2re, r.second.real()), se(ss_x2im, r.second.imag()));
  return r;
}

}  // namespace charpoly::sampling
