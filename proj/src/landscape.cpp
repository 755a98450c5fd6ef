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

#include "charpoly/landscape.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

extern "C" {
void dsyev_(const char* jobz, const char* uplo, const int* n, double* a,
            const int* lda, double* w, double* work, const int* lwork,
            int* info);
}

namespace charpoly::landscape {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lambda0(cplx z0) { return std::sqrt(1.0 - std::norm(z0)); }

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  std::vector<double> w(n);
  int info = 0, lwork = std::max(1, 34 * n);
  std::vector<double> work(lwork);
  const char jobz = 'N', uplo = 'L';
  dsyev_(&jobz, &uplo, &n, a.data(), &n, w.data(), work.data(), &lwork, &info);
  if (info != 0) throw std::runtime_error("dsyev failed");
  return w;
}

}  // namespace

LandscapePoint LandscapePoint::zero(int m) {
  LandscapePoint p;
  p.lambdas.assign(m, 0.0);
  const std::size_t pairs = std::size_t(m) * (m - 1) / 2;
  p.b20.assign(pairs, cplx(0.0));
  p.b02.assign(pairs, cplx(0.0));
  return p;
}

LandscapePoint LandscapePoint::stationary(int m, cplx z0) {
  LandscapePoint p = zero(m);
  const double l0 = lambda0(z0);
  std::fill(p.lambdas.begin(), p.lambdas.end(), l0);
  return p;
}

double LandscapePoint::distance_to(const LandscapePoint& o) const {
  double s = 0.0;
  for (int j = 0; j < m(); ++j) {
    const double d = lambdas[j] - o.lambdas[j];
    s += d * d;
  }
  for (std::size_t i = 0; i < b20.size(); ++i) s += std::norm(b20[i] - o.b20[i]);
  for (std::size_t i = 0; i < b02.size(); ++i) s += std::norm(b02[i] - o.b02[i]);
  const double dr = std::sqrt(q_rest_norm2) - std::sqrt(o.q_rest_norm2);
  s += dr * dr;
  return std::sqrt(s);
}

ComplexMatrix saddle_matrix(const LandscapePoint& pt, cplx kappa20, cplx z0) {
  const int m = pt.m();
  const auto pairs = index_pairs(m);
  const cplx s = std::sqrt(kappa20);       // principal branch
  const cplx sbar = std::conj(s);

  ComplexMatrix b20(m, m), b02(m, m);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    b20(i, j) = s * pt.b20[p];
    b20(j, i) = -s * pt.b20[p];
    b02(i, j) = sbar * pt.b02[p];
    b02(j, i) = -sbar * pt.b02[p];
  }

  ComplexMatrix f(4 * m, 4 * m);
  auto put = [&](int bi, int bj, int i, int j, cplx v) {
    f(bi * m + i, bj * m + j) = v;
  };
  for (int i = 0; i < m; ++i) {
    const double lam = pt.lambdas[i];
    put(0, 2, i, i, -z0);
    put(0, 3, i, i, lam);
    put(1, 2, i, i, -lam);
    put(1, 3, i, i, -std::conj(z0));
    put(2, 0, i, i, z0);
    put(2, 1, i, i, lam);
    put(3, 0, i, i, -lam);
    put(3, 1, i, i, std::conj(z0));
    for (int j = 0; j < m; ++j) {
      put(0, 0, i, j, b20(i, j));
      put(1, 1, i, j, std::conj(b02(j, i)));  // adjoint block
      put(2, 2, i, j, std::conj(b20(j, i)));
      put(3, 3, i, j, b02(i, j));
    }
  }
  return f;
}

namespace {

double point_norm2(const LandscapePoint& pt) {
  double s = pt.q_rest_norm2;
  for (double l : pt.lambdas) s += l * l;
  for (const cplx& v : pt.b20) s += std::norm(v);
  for (const cplx& v : pt.b02) s += std::norm(v);
  return s;
}

}  // namespace

double objective(const LandscapePoint& pt, cplx kappa20, cplx z0) {
  const cplx pf = pfaffian(saddle_matrix(pt, kappa20, z0));
  const double mag = std::abs(pf);
  if (mag == 0.0) return -kInf;
  return -point_norm2(pt) + std::log(mag);
}

double max_value(cplx z0, int m) { return double(m) * (std::norm(z0) - 1.0); }

double reduced_hessian_min_eig(cplx kappa20, cplx z0) {
  const double k = std::abs(kappa20);
  const double lam2 = 1.0 - std::norm(z0);
  return (1.0 - k * (z0 * z0).real()) - k * lam2;
}

double reduced_hessian_min_eig_by_solver(cplx kappa20, cplx z0) {
  const double k = std::abs(kappa20);
  const double a = 1.0 - k * (z0 * z0).real();
  const double c = k * (1.0 - std::norm(z0));
  double best = kInf;
  for (const double sign : {+1.0, -1.0}) {
    std::vector<double> form = {a, sign * c, sign * c, a};
    const auto eigs = symmetric_eigenvalues(form, 2);
    best = std::min(best, eigs[0]);
  }
  return best;
}

BoundChain bound_chain(const LandscapePoint& pt, cplx kappa20, cplx z0) {
  const int m = pt.m();
  const double k = std::abs(kappa20);
  const double z2 = std::norm(z0);
  const auto pairs = index_pairs(m);

  // Row sums of |entries|^2 of each full skew block.
  std::vector<double> rs20(m, 0.0), rs02(m, 0.0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    rs20[i] += std::norm(pt.b20[p]);
    rs20[j] += std::norm(pt.b20[p]);
    rs02[i] += std::norm(pt.b02[p]);
    rs02[j] += std::norm(pt.b02[p]);
  }

  double q1 = 0.0;  // <Q1,Q1>: lambdas plus each upper entry once
  for (double l : pt.lambdas) q1 += l * l;
  double sum_b20 = 0.0, sum_b02 = 0.0;
  for (const cplx& v : pt.b20) sum_b20 += std::norm(v);
  for (const cplx& v : pt.b02) sum_b02 += std::norm(v);
  q1 += sum_b20 + sum_b02;

  BoundChain c{};
  c.value = objective(pt, kappa20, z0);
  const cplx pf = pfaffian(saddle_matrix(pt, kappa20, z0));
  const double logdet_half =
      (std::abs(pf) == 0.0) ? -kInf : std::log(std::abs(pf));
  c.norm_drop = -q1 + logdet_half;
  double had = 0.0, lin = 0.0;
  for (int j = 0; j < m; ++j) {
    const double l2 = pt.lambdas[j] * pt.lambdas[j];
    const double f20 = z2 + l2 + k * rs20[j];
    const double f02 = z2 + l2 + k * rs02[j];
    had += 0.5 * std::log(f20 * f02);
    lin += 0.5 * (f20 + f02 - 2.0);
  }
  c.hadamard = -q1 + had;
  c.linearized = -q1 + lin;
  c.global = max_value(z0, m);
  return c;
}

namespace {

// Real-coordinate chart: [lambda_0.., Re b20.., Im b20.., Re b02..,
// Im b02.., r] with q_rest_norm2 = r^2.
int coord_dim(int m) { return m + 4 * (m * (m - 1) / 2) + 1; }

LandscapePoint point_from_coords(int m, const std::vector<double>& x,
                                 bool fold) {
  const int pairs = m * (m - 1) / 2;
  LandscapePoint p = LandscapePoint::zero(m);
  for (int j = 0; j < m; ++j) p.lambdas[j] = fold ? std::abs(x[j]) : x[j];
  int o = m;
  for (int i = 0; i < pairs; ++i)
    p.b20[i] = cplx(x[o + i], x[o + pairs + i]);
  o += 2 * pairs;
  for (int i = 0; i < pairs; ++i)
    p.b02[i] = cplx(x[o + i], x[o + pairs + i]);
  o += 2 * pairs;
  p.q_rest_norm2 = x[o] * x[o];
  return p;
}

std::vector<double> coords_from_point(const LandscapePoint& p) {
  const int m = p.m();
  const int pairs = m * (m - 1) / 2;
  std::vector<double> x(coord_dim(m), 0.0);
  for (int j = 0; j < m; ++j) x[j] = p.lambdas[j];
  int o = m;
  for (int i = 0; i < pairs; ++i) {
    x[o + i] = p.b20[i].real();
    x[o + pairs + i] = p.b20[i].imag();
  }
  o += 2 * pairs;
  for (int i = 0; i < pairs; ++i) {
    x[o + i] = p.b02[i].real();
    x[o + pairs + i] = p.b02[i].imag();
  }
  o += 2 * pairs;
  x[o] = std::sqrt(p.q_rest_norm2);
  return x;
}

double eval_coords(int m, cplx kappa20, cplx z0, const std::vector<double>& x,
                   bool fold) {
  return objective(point_from_coords(m, x, fold), kappa20, z0);
}

}  // namespace

FdReport fd_stationarity(cplx kappa20, cplx z0, int m, double step) {
  if (step < 1e-6 || step > 1e-3)
    throw std::invalid_argument("fd_stationarity: step must be in [1e-6,1e-3]");
  const int d = coord_dim(m);
  std::vector<double> x0 =
      coords_from_point(LandscapePoint::stationary(m, z0));
  const double f0 = eval_coords(m, kappa20, z0, x0, false);

  auto feval = [&](const std::vector<double>& x) {
    return eval_coords(m, kappa20, z0, x, false);
  };

  FdReport rep;
  std::vector<double> h(std::size_t(d) * d, 0.0);
  std::vector<double> xp = x0, xm = x0;
  for (int i = 0; i < d; ++i) {
    xp = x0;
    xm = x0;
    xp[i] += step;
    xm[i] -= step;
    const double fp = feval(xp), fm = feval(xm);
    rep.grad_max_norm =
        std::max(rep.grad_max_norm, std::abs((fp - fm) / (2.0 * step)));
    h[std::size_t(i) * d + i] = (fp - 2.0 * f0 + fm) / (step * step);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      std::vector<double> x = x0;
      x[i] += step;
      x[j] += step;
      const double fpp = feval(x);
      x[j] -= 2.0 * step;
      const double fpm = feval(x);
      x[i] -= 2.0 * step;
      const double fmm = feval(x);
      x[j] += 2.0 * step;
      const double fmp = feval(x);
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * step * step);
      h[std::size_t(i) * d + j] = v;
      h[std::size_t(j) * d + i] = v;
    }
  const auto eigs = symmetric_eigenvalues(h, d);
  rep.hessian_min_eig = eigs.front();
  rep.hessian_max_eig = eigs.back();
  return rep;
}

LandscapePoint random_point(int m, double radius, rng::Stream& stream) {
  const int d = coord_dim(m);
  std::vector<double> g(d);
  stream.fill_normals(g.data(), d);
  double norm2 = 0.0;
  for (double v : g) norm2 += v * v;
  const double u = stream.next_unit();
  const double scale =
      radius * std::pow(u, 1.0 / d) / std::sqrt(std::max(norm2, 1e-300));
  for (double& v : g) v *= scale;
  return point_from_coords(m, g, /*fold=*/true);
}

std::vector<double> probe_values_serial(cplx kappa20, cplx z0, int m,
                                        std::uint64_t trials, double radius,
                                        std::uint64_t seed,
                                        std::uint64_t stream_base) {
  std::vector<double> out(trials);
  for (std::uint64_t i = 0; i < trials; ++i) {
    rng::Stream s(seed, stream_base + i);
    out[i] = objective(random_point(m, radius, s), kappa20, z0);
  }
  return out;
}

std::vector<double> probe_values_parallel(cplx kappa20, cplx z0, int m,
                                          std::uint64_t trials, double radius,
                                          std::uint64_t seed,
                                          std::uint64_t stream_base,
                                          int threads) {
  std::vector<double> out(trials);
  const std::int64_t n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 256) num_threads(std::max(1, threads))
  for (std::int64_t i = 0; i < n; ++i) {
    rng::Stream s(seed, stream_base + std::uint64_t(i));
    out[i] = objective(random_point(m, radius, s), kappa20, z0);
  }
  return out;
}

namespace {

// Gradient ascent with backtracking, coordinates folded into the domain.
LandscapePoint ascend(cplx kappa20, cplx z0, int m, LandscapePoint start,
                      int max_iters) {
  const int d = coord_dim(m);
  std::vector<double> x = coords_from_point(start);
  const double h = 1e-5;
  double fx = eval_coords(m, kappa20, z0, x, true);
  for (int it = 0; it < max_iters; ++it) {
    std::vector<double> grad(d);
    double gnorm = 0.0;
    for (int i = 0; i < d; ++i) {
      std::vector<double> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      grad[i] = (eval_coords(m, kappa20, z0, xp, true) -
                 eval_coords(m, kappa20, z0, xm, true)) /
                (2.0 * h);
      gnorm += grad[i] * grad[i];
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-9) break;
    double step = 0.5;
    bool moved = false;
    while (step > 1e-12) {
      std::vector<double> xn = x;
      for (int i = 0; i < d; ++i) xn[i] += step * grad[i];
      const double fn = eval_coords(m, kappa20, z0, xn, true);
      if (fn > fx + 1e-4 * step * gnorm * gnorm) {
        x = std::move(xn);
        fx = fn;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return point_from_coords(m, x, true);
}

}  // namespace

SaddleReport certify_global_max(cplx kappa20, cplx z0, int m,
                                const CertifyOptions& opt) {
  SaddleReport rep;
  rep.max_theoretical = max_value(z0, m);
  const LandscapePoint star = LandscapePoint::stationary(m, z0);
  const double l0 = lambda0(z0);

  // Deterministic probes: the stationary point, the origin, axis nudges,
  // and a few shells.
  std::vector<LandscapePoint> fixed;
  fixed.push_back(star);
  fixed.push_back(LandscapePoint::zero(m));
  for (const double d : {1e-3, 1e-1, 0.5}) {
    LandscapePoint p = star;
    p.lambdas[0] += d;
    fixed.push_back(p);
    p = star;
    p.lambdas[0] = std::max(0.0, p.lambdas[0] - d);
    fixed.push_back(p);
    if (!star.b20.empty()) {
      p = star;
      p.b20[0] = cplx(d, 0.5 * d);
      fixed.push_back(p);
      p = star;
      p.b02[0] = cplx(-0.3 * d, d);
      fixed.push_back(p);
    }
    p = star;
    p.q_rest_norm2 = d * d;
    fixed.push_back(p);
  }
  for (const double shell : {0.5, 1.0, 2.0}) {
    LandscapePoint p = LandscapePoint::zero(m);
    std::fill(p.lambdas.begin(), p.lambdas.end(), l0 * shell);
    fixed.push_back(p);
  }

  double best = -kInf;
  double best_dist = kInf;
  const LandscapePoint* best_fixed = nullptr;
  auto consider = [&](double value, const LandscapePoint& p) {
    if (value > best) {
      best = value;
      best_dist = p.distance_to(star);
      best_fixed = &p;
    }
    if (value > rep.max_theoretical + 1e-9 && rep.failure.empty())
      rep.failure = "objective exceeds the proven global maximum";
    if (value >= rep.max_theoretical - 1e-9 &&
        p.distance_to(star) > 1e-5 && rep.failure.empty())
      rep.failure = "near-maximal value away from the stationary point";
  };
  for (const auto& p : fixed) consider(objective(p, kappa20, z0), p);

  const auto values = probe_values_parallel(
      kappa20, z0, m, opt.trials, opt.radius, opt.seed, opt.stream_base,
      opt.threads);
  LandscapePoint best_random = star;
  if (!values.empty()) {
    std::uint64_t best_i = 0;
    double best_rand_val = -kInf;
    for (std::uint64_t i = 0; i < values.size(); ++i) {
      if (values[i] > best_rand_val) {
        best_rand_val = values[i];
        best_i = i;
      }
      if (values[i] >= rep.max_theoretical - 1e-9) {
        // Regenerate the rare near-maximal probe to check uniqueness.
        rng::Stream s(opt.seed, opt.stream_base + i);
        const LandscapePoint p = random_point(m, opt.radius, s);
        consider(values[i], p);
      }
    }
    rng::Stream s(opt.seed, opt.stream_base + best_i);
    best_random = random_point(m, opt.radius, s);
    consider(best_rand_val, best_random);
  }
  rep.probes = opt.trials + fixed.size();
  rep.max_found = best;
  rep.gap = rep.max_theoretical - rep.max_found;
  rep.argmax_distance = best_dist;
  (void)best_fixed;

  if (opt.run_ascent) {
    // The landscape has critical points strictly below the maximum, so an
    // ascent from the best probe may legitimately terminate elsewhere; what
    // it must never find is a second point at the top.
    const LandscapePoint top = ascend(kappa20, z0, m, best_random, 400);
    rep.ascent_distance = top.distance_to(star);
    const double vtop = objective(top, kappa20, z0);
    if (vtop > rep.max_theoretical + 1e-9 && rep.failure.empty())
      rep.failure = "ascent exceeded the proven global maximum";
    if (vtop >= rep.max_theoretical - 1e-6 && rep.ascent_distance > 1e-3 &&
        rep.failure.empty())
      rep.failure = "ascent found a second near-maximal point";

    // Local attraction: a deterministic nudge must flow back.
    LandscapePoint nudged = star;
    for (int j = 0; j < m; ++j)
      nudged.lambdas[j] += (j % 2 == 0 ? 0.12 : -0.09);
    if (!nudged.b20.empty()) {
      nudged.b20[0] += cplx(0.08, -0.05);
      nudged.b02[nudged.b02.size() - 1] += cplx(-0.04, 0.07);
    }
    nudged.q_rest_norm2 = 0.01;
    const LandscapePoint back = ascend(kappa20, z0, m, nudged, 400);
    if (back.distance_to(star) > 1e-3 && rep.failure.empty())
      rep.failure = "stationary point is not locally attracting";
  }

  const FdReport fd = fd_stationarity(kappa20, z0, m, opt.fd_step);
  rep.hessian_max_eig = fd.hessian_max_eig;
  rep.hessian_min_eig = fd.hessian_min_eig;
  if (fd.grad_max_norm > 1e-6 && rep.failure.empty())
    rep.failure = "stationary-point gradient above tolerance";
  if (fd.hessian_max_eig >= 0.0 && rep.failure.empty())
    rep.failure = "Hessian not negative definite at the stationary point";

  rep.ok = rep.failure.empty();
  return rep;
}

}  // namespace charpoly::landscape
