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

#include "charpoly/verify.hpp"

#include <cmath>
#include <sstream>

#include "charpoly/hciz.hpp"
#include "charpoly/landscape.hpp"
#include "charpoly/rng.hpp"
#include "charpoly/sampling.hpp"

namespace charpoly::verify {

namespace {

ComplexMatrix random_complex(int r, int c, rng::Stream& s) {
  ComplexMatrix m(r, c);
  std::vector<double> g(2 * m.a.size());
  s.fill_normals(g.data(), g.size());
  for (std::size_t i = 0; i < m.a.size(); ++i)
    m.a[i] = cplx(g[2 * i], g[2 * i + 1]);
  return m;
}

ComplexMatrix random_skew(int n, rng::Stream& s) {
  ComplexMatrix m = random_complex(n, n, s);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) m(j, i) = -m(i, j);
  }
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::vector<CheckResult> check_matalg(std::uint64_t seed, PfaffianFn pf) {
  if (!pf) pf = [](const ComplexMatrix& m) { return pfaffian(m); };
  std::vector<CheckResult> out;
  rng::Stream s(seed, 0xA17);

  {  // closed-form anchors pin the sign convention
    ComplexMatrix two(2, 2);
    two(0, 1) = cplx(1.5, -2.0);
    two(1, 0) = -two(0, 1);
    double worst = std::abs(pf(two) - cplx(1.5, -2.0));
    ComplexMatrix four(4, 4);
    const cplx e[6] = {{1, .5}, {-.3, 2}, {.7, -1.1}, {2.2, .1}, {-1.4, .6},
                       {.9, .9}};
    four(0, 1) = e[0];
    four(0, 2) = e[1];
    four(0, 3) = e[2];
    four(1, 2) = e[3];
    four(1, 3) = e[4];
    four(2, 3) = e[5];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j) four(i, j) = -four(j, i);
    worst = std::max(worst, std::abs(pf(four) - (e[0] * e[5] - e[1] * e[4] +
                                                 e[2] * e[3])));
    out.push_back({"pfaffian 2x2/4x4 closed forms", worst < 1e-12,
                   "worst error " + fmt(worst)});
  }
  {  // Pf^2 = det, dims 2..12, 200 matrices each
    double worst = 0.0;
    for (int n = 2; n <= 12; n += 2)
      for (int rep = 0; rep < 200; ++rep) {
        const ComplexMatrix a = random_skew(n, s);
        const cplx p = pf(a);
        const cplx d = lu_logdet(a).value();
        const double rel = std::abs(p * p - d) / std::max(std::abs(d), 1e-300);
        worst = std::max(worst, rel);
      }
    out.push_back({"pfaffian square equals determinant", worst < 1e-9,
                   "worst relative error " + fmt(worst)});
  }
  {  // congruence covariance, dims 2..8
    double worst = 0.0;
    for (int n = 2; n <= 8; n += 2)
      for (int rep = 0; rep < 100; ++rep) {
        const ComplexMatrix a = random_skew(n, s);
        const ComplexMatrix p = random_complex(n, n, s);
        const ComplexMatrix papt = matmul(matmul(p, a), transpose(p));
        const cplx lhs = pf(papt);
        const cplx rhs = lu_logdet(p).value() * pf(a);
        const double rel =
            std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
        worst = std::max(worst, rel);
      }
    out.push_back({"pfaffian congruence covariance", worst < 1e-9,
                   "worst relative error " + fmt(worst)});
  }
  {  // wedge2 multiplicativity and unitarity
    double worst_mul = 0.0, worst_uni = 0.0, worst_tr = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      const int m = 4;
      const ComplexMatrix a = random_complex(m, m, s);
      const ComplexMatrix b = random_complex(m, m, s);
      worst_mul = std::max(
          worst_mul, max_abs_diff(wedge2(matmul(a, b)),
                                  matmul(wedge2(a), wedge2(b))) /
                         std::max(1.0, max_abs(wedge2(matmul(a, b)))));
      const ComplexMatrix u = sampling::sample_haar_unitary(m, s);
      const ComplexMatrix wu = wedge2(u);
      worst_uni = std::max(
          worst_uni,
          max_abs_diff(matmul(adjoint(wu), wu),
                       ComplexMatrix::identity(wu.rows)));
      const ComplexMatrix v = sampling::sample_haar_unitary(m, s);
      const ComplexMatrix lhs =
          matmul(wedge2(matmul(v, adjoint(u))), wedge2(matmul(u, adjoint(v))));
      cplx tr = 0.0;
      for (int i = 0; i < lhs.rows; ++i) tr += lhs(i, i);
      worst_tr = std::max(
          worst_tr, std::abs(tr - cplx(0.5 * m * (m - 1))));
    }
    out.push_back({"wedge2 multiplicativity", worst_mul < 1e-10,
                   "worst relative error " + fmt(worst_mul)});
    out.push_back({"wedge2 of a unitary is unitary", worst_uni < 1e-10,
                   "worst residual " + fmt(worst_uni)});
    out.push_back({"wedge2 mutually inverse trace", worst_tr < 1e-9,
                   "worst deviation from m(m-1)/2: " + fmt(worst_tr)});
  }
  return out;
}

std::vector<CheckResult> check_sampling(std::uint64_t seed) {
  std::vector<CheckResult> out;
  rng::Stream s(seed, 0x5A);

  {  // unitarity residual, every d up to 64
    double worst = 0.0;
    for (int d = 1; d <= 64; ++d) {
      const ComplexMatrix u = sampling::sample_haar_unitary(d, s);
      worst = std::max(worst, max_abs_diff(matmul(adjoint(u), u),
                                           ComplexMatrix::identity(d)));
    }
    out.push_back({"haar unitarity residual (d <= 64)", worst < 1e-12,
                   "worst max-norm residual " + fmt(worst)});
  }
  {  // left invariance of the (1,1) statistics
    const int d = 3;
    const ComplexMatrix v = sampling::sample_haar_unitary(d, s);
    const std::uint64_t reps = 100000;
    cplx mean_u = 0, mean_vu = 0;
    double a2_u = 0, a2_vu = 0;
    for (std::uint64_t i = 0; i < reps; ++i) {
      const ComplexMatrix u = sampling::sample_haar_unitary(d, s);
      const cplx vu = matmul(v, u)(0, 0);
      mean_u += u(0, 0);
      mean_vu += vu;
      a2_u += std::norm(u(0, 0));
      a2_vu += std::norm(vu);
    }
    const double n = double(reps);
    // Var(Re u11) = Var(Im u11) = 1/(2d); Var(|u11|^2) about 1/18 at d=3.
    const double se_mean = std::sqrt(1.0 / d / n);
    const double se_a2 = std::sqrt((1.0 / 18.0) / n) * std::sqrt(2.0);
    const bool pass = std::abs(mean_u / n - mean_vu / n) <= 4 * se_mean &&
                      std::abs(a2_u / n - a2_vu / n) <= 4 * se_a2 &&
                      std::abs(a2_u / n - 1.0 / d) <= 4 * se_a2;
    out.push_back({"haar left invariance (VU vs U statistics)", pass,
                   "E|u11|^2 = " + fmt(a2_u / n)});
  }
  {  // moment gates
    bool pass = true;
    std::string detail;
    const std::pair<sampling::DistKind, cplx> cases[] = {
        {sampling::DistKind::gaussian, cplx(0, 0)},
        {sampling::DistKind::gaussian, cplx(0.5, 0)},
        {sampling::DistKind::gaussian, cplx(1, 0)},
        {sampling::DistKind::rademacher_pair, cplx(0, 0.3)},
        {sampling::DistKind::uniform_pair, cplx(-0.4, 0.2)},
    };
    for (const auto& [kind, k20] : cases) {
      const auto dist = sampling::make_distribution(kind, k20);
      const auto rep = sampling::empirical_moments(dist, 1000000, s);
      if (!rep.within_gates(k20)) {
        pass = false;
        detail += sampling::to_string(kind) + " failed; ";
      }
      const double se4 = rep.se_abs4;
      const double expect4 = dist.kappa22 + std::norm(k20) + 2.0;
      if (std::abs(rep.abs4 - expect4) > 4 * se4 + 1e-12) {
        pass = false;
        detail += sampling::to_string(kind) + " |x|^4 off; ";
      }
    }
    out.push_back({"entry moment gates at 1e6 draws", pass, detail});
  }
  return out;
}

std::vector<CheckResult> check_hciz(std::uint64_t seed, std::uint64_t trials,
                                    std::uint64_t samples_d2,
                                    std::uint64_t samples_d3, int threads) {
  std::vector<CheckResult> out;
  for (const int d : {2, 3}) {
    const std::uint64_t samples = (d == 2) ? samples_d2 : samples_d3;
    const auto rep = hciz::hciz_check(d, trials, samples, seed + d, threads);
    std::string detail = fmt(double(rep.passed)) + "/" +
                         fmt(double(rep.trials)) + " within 4 sigma";
    for (const auto& f : rep.failures)
      detail += "; z=" + fmt(f.z_abs);
    out.push_back({"hciz closed form vs Haar MC, d=" + std::to_string(d),
                   rep.ok, detail});
  }
  return out;
}

std::vector<CheckResult> check_landscape(std::uint64_t seed,
                                         const LandscapeSizes& sizes) {
  std::vector<CheckResult> out;
  rng::Stream ps(seed, 0x1A11D);
  std::vector<std::pair<cplx, cplx>> pairs;  // (kappa20, z0)
  for (int i = 0; i < sizes.pairs_interior; ++i) {
    double u[4];
    ps.fill_units(u, 4);
    const cplx k = std::polar(0.9 * std::sqrt(u[0]), 6.2831853 * u[1]);
    const cplx z0 = std::polar(0.85 * std::sqrt(u[2]), 6.2831853 * u[3]);
    pairs.emplace_back(k, z0);
  }
  for (int i = 0; i < sizes.pairs_boundary; ++i) {
    for (;;) {
      double u[3];
      ps.fill_units(u, 3);
      const cplx k = std::polar(1.0, 6.2831853 * u[0]);
      const cplx z0 = std::polar(0.85 * std::sqrt(u[1]), 6.2831853 * u[2]);
      if (std::abs(z0.imag()) < 0.15) continue;
      pairs.emplace_back(k, z0);
      break;
    }
  }

  bool bound_ok = true, grad_ok = true, hess_ok = true, reduced_ok = true;
  std::string detail;
  std::uint64_t base = 0;
  for (const auto& [k20, z0] : pairs) {
    for (const int m : sizes.m_values) {
      landscape::CertifyOptions opt;
      opt.trials = sizes.trials;
      opt.radius = sizes.radius;
      opt.seed = seed;
      opt.stream_base = (base++) << 44;
      opt.threads = sizes.threads;
      const auto rep = landscape::certify_global_max(k20, z0, m, opt);
      if (!rep.ok) {
        bound_ok = false;
        detail += "certify failed (" + rep.failure + "); ";
      }
      const double reduced =
          landscape::reduced_hessian_min_eig_by_solver(k20, z0);
      if (std::abs(reduced - landscape::reduced_hessian_min_eig(k20, z0)) >
          1e-9) {
        reduced_ok = false;
        detail += "reduced-form eigenvalue mismatch; ";
      }
      const auto fd = landscape::fd_stationarity(k20, z0, m, 1e-4);
      if (fd.grad_max_norm > 1e-6) {
        grad_ok = false;
        detail += "gradient " + fmt(fd.grad_max_norm) + "; ";
      }
      if (fd.hessian_max_eig >= 0) {
        hess_ok = false;
        detail += "hessian max eig " + fmt(fd.hessian_max_eig) + "; ";
      }
    }
  }
  out.push_back({"saddle bound, uniqueness and ascent", bound_ok, detail});
  out.push_back({"stationary gradient below 1e-6", grad_ok, ""});
  out.push_back({"finite-difference Hessian negative definite", hess_ok, ""});
  out.push_back({"reduced curvature form matches closed form", reduced_ok, ""});
  return out;
}

}  // namespace charpoly::verify
