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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "charpoly/landscape.hpp"
#include "doctest.h"

using namespace charpoly;
using namespace charpoly::landscape;

TEST_CASE("saddle matrix is exactly skew and m=1 has the closed Pfaffian") {
  const cplx z0(0.4, -0.3);
  LandscapePoint p = LandscapePoint::zero(1);
  p.lambdas[0] = 0.8;
  const ComplexMatrix f = saddle_matrix(p, cplx(0.5, 0.2), z0);
  CHECK(max_abs_diff(f, ComplexMatrix(4, 4)) > 0);  // nonzero
  double skew = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      skew = std::max(skew, std::abs(f(i, j) + f(j, i)));
  CHECK(skew == 0.0);

  // Pf = -(|z0|^2 + lambda^2) in this block layout (the 4x4 expansion
  // a f - b e + c d with a = 0, b = -z0, c = lambda, d = -lambda,
  // e = -conj z0, f = 0).
  const cplx pf = pfaffian(f);
  CHECK(std::abs(pf - cplx(-(std::norm(z0) + 0.64))) < 1e-12);
  CHECK(std::abs(std::abs(pf) - (std::norm(z0) + 0.64)) < 1e-12);
}

TEST_CASE("skewness holds for every kappa20 phase including the branch cut") {
  rng::Stream s(41, 0);
  for (const cplx k : {cplx(-0.5, 0.0), cplx(0.3, -0.8), cplx(1.0, 0.0),
                       cplx(0.0, -1.0), cplx(-1.0, 0.0)}) {
    LandscapePoint p = LandscapePoint::zero(3);
    std::vector<double> g(2 * 3 + 4 * 3);
    s.fill_normals(g.data(), g.size());
    for (int j = 0; j < 3; ++j) p.lambdas[j] = std::abs(g[j]);
    for (int i = 0; i < 3; ++i) {
      p.b20[i] = cplx(g[3 + 2 * i], g[4 + 2 * i]);
      p.b02[i] = cplx(g[9 + 2 * i], g[10 + 2 * i]);
    }
    const ComplexMatrix f = saddle_matrix(p, k, cplx(0.2, 0.5));
    double skew = 0;
    for (int i = 0; i < f.rows; ++i)
      for (int j = 0; j < f.cols; ++j)
        skew = std::max(skew, std::abs(f(i, j) + f(j, i)));
    CHECK(skew < 1e-14);
  }
}

TEST_CASE("|Pf| = 1 at the stationary point and the objective value matches") {
  for (const int m : {1, 2, 3}) {
    for (const cplx z0 : {cplx(0, 0), cplx(0.5, 0), cplx(0.3, -0.6)}) {
      const LandscapePoint star = LandscapePoint::stationary(m, z0);
      for (const cplx k : {cplx(0.0), cplx(0.7, 0.1), cplx(1.0, 0.0)}) {
        const cplx pf = pfaffian(saddle_matrix(star, k, z0));
        CHECK(std::abs(std::abs(pf) - 1.0) < 1e-12);
        // the sign at the stationary point is (-1)^m in this block layout
        CHECK(std::abs(pf - cplx(m % 2 == 0 ? 1.0 : -1.0)) < 1e-12);
        CHECK(objective(star, k, z0) ==
              doctest::Approx(max_value(z0, m)).epsilon(1e-12));
      }
    }
  }
  // m=2, z0=0.5: maximum is 2(0.25 - 1) = -1.5
  CHECK(max_value(cplx(0.5, 0), 2) == doctest::Approx(-1.5));
  // all-zero point at m=1: objective = 2 log|z0|
  const cplx z0(0.37, 0.11);
  CHECK(objective(LandscapePoint::zero(1), 0.4, z0) ==
        doctest::Approx(std::log(std::norm(z0))).epsilon(1e-12));
}

TEST_CASE("objective is independent of the square-root branch in Re") {
  // any branch choice rotates the skew blocks by a unit phase
  rng::Stream s(42, 0);
  for (int rep = 0; rep < 10; ++rep) {
    double g[14];
    s.fill_normals(g, 14);
    LandscapePoint p = LandscapePoint::zero(2);
    p.lambdas = {std::abs(g[0]), std::abs(g[1])};
    p.b20[0] = cplx(g[2], g[3]);
    p.b02[0] = cplx(g[4], g[5]);
    p.q_rest_norm2 = g[6] * g[6];
    const cplx k = std::polar(0.8, 3.0 * g[7]);
    const double v1 = objective(p, k, cplx(0.2, 0.3));
    // multiply both skew blocks by opposite unit phases: same |Pf|
    LandscapePoint q = p;
    const cplx phase = std::polar(1.0, 1.1);
    q.b20[0] *= phase;
    q.b02[0] *= std::conj(phase);
    const double v2 = objective(q, k, cplx(0.2, 0.3));
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-10));
  }
}

TEST_CASE("saddle matrix: Pfaffian squares to the determinant") {
  rng::Stream s(45, 0);
  for (const int m : {1, 2, 3}) {
    for (int rep = 0; rep < 20; ++rep) {
      const LandscapePoint p = random_point(m, 2.0, s);
      const ComplexMatrix f = saddle_matrix(p, cplx(0.4, -0.7), cplx(0.3, 0.2));
      const cplx pf = pfaffian(f);
      const cplx det = lu_logdet(f).value();
      CHECK(std::abs(pf * pf - det) <= 1e-9 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST_CASE("bound chain holds at random points") {
  rng::Stream s(43, 0);
  for (const cplx k : {cplx(0.0), cplx(0.6, -0.3), cplx(1.0, 0.0)}) {
    const cplx z0(0.25, 0.35);
    for (int rep = 0; rep < 300; ++rep) {
      const LandscapePoint p = random_point(3, 3.0, s);
      const BoundChain c = bound_chain(p, k, z0);
      const double tol = 1e-9;
      CHECK(c.value <= c.norm_drop + tol);
      CHECK(c.norm_drop <= c.hadamard + tol);
      CHECK(c.hadamard <= c.linearized + tol);
      CHECK(c.linearized <= c.global + tol);
    }
  }
}

TEST_CASE("reduced curvature form: closed arithmetic and solver agree") {
  CHECK(reduced_hessian_min_eig(0.0, cplx(0.4, 0.2)) == doctest::Approx(1.0));
  CHECK(reduced_hessian_min_eig(1.0, cplx(0, 0.5)) == doctest::Approx(0.5));
  CHECK(reduced_hessian_min_eig(1.0, cplx(0.5, 0)) == doctest::Approx(0.0));
  rng::Stream s(44, 0);
  for (int rep = 0; rep < 50; ++rep) {
    double u[4];
    s.fill_units(u, 4);
    const cplx k = std::polar(u[0], 6.28 * u[1]);
    const cplx z0 = std::polar(0.95 * u[2], 6.28 * u[3]);
    CHECK(std::abs(reduced_hessian_min_eig(k, z0) -
                   reduced_hessian_min_eig_by_solver(k, z0)) < 1e-9);
  }
}

TEST_CASE("finite differences: stationary gradient, curvature values") {
  const auto fd = fd_stationarity(0.0, 0.0, 2, 1e-4);
  CHECK(fd.grad_max_norm < 1e-7);
  CHECK(fd.hessian_max_eig <= -0.5);
  // Lambda-block curvature is -4 lambda0^2 = -4 at z0 = 0; B-block and
  // q-rest directions give -2; the most negative direction is the Lambda one.
  CHECK(fd.hessian_min_eig == doctest::Approx(-4.0).epsilon(1e-4));
  CHECK(fd.hessian_max_eig == doctest::Approx(-2.0).epsilon(1e-4));

  CHECK_THROWS_AS((void)fd_stationarity(0.0, 0.0, 2, 0.1),
                  std::invalid_argument);
}

TEST_CASE("gradient is visibly nonzero away from the stationary point") {
  const cplx z0(0.3, 0.1);
  const int m = 2;
  LandscapePoint p = LandscapePoint::stationary(m, z0);
  for (double& l : p.lambdas) l *= 0.9;
  // directional finite difference along lambda_1
  const double h = 1e-5;
  LandscapePoint pp = p, pm = p;
  pp.lambdas[0] += h;
  pm.lambdas[0] -= h;
  const double grad =
      (objective(pp, 0.0, z0) - objective(pm, 0.0, z0)) / (2 * h);
  CHECK(std::abs(grad) > 1e-3);
}

TEST_CASE("Hessian spectrum depends only on |kappa20| (phase rotations)") {
  const cplx z0(0.2, 0.4);
  const auto base = fd_stationarity(cplx(0.7, 0.0), z0, 2, 1e-4);
  for (const double phi : {0.7, 2.1, 3.9}) {
    const auto rot = fd_stationarity(std::polar(0.7, phi), z0, 2, 1e-4);
    CHECK(rot.hessian_max_eig ==
          doctest::Approx(base.hessian_max_eig).epsilon(1e-5));
    CHECK(rot.hessian_min_eig ==
          doctest::Approx(base.hessian_min_eig).epsilon(1e-5));
  }
}

TEST_CASE("certification harness on both validity sub-regimes") {
  CertifyOptions opt;
  opt.trials = 20000;
  opt.seed = 99;
  opt.threads = 2;

  for (const auto& [k, z0] :
       {std::pair<cplx, cplx>{cplx(0.0), cplx(0.3, 0.0)},
        std::pair<cplx, cplx>{cplx(1.0, 0.0), cplx(0.0, 0.5)}}) {
    const auto rep = certify_global_max(k, z0, 2, opt);
    CAPTURE(rep.failure);
    CHECK(rep.ok);
    CHECK(rep.gap >= -1e-9);
    CHECK(rep.gap < 1e-12);             // the stationary probe attains it
    CHECK(rep.argmax_distance < 1e-9);  // and is the argmax
    CHECK(rep.hessian_max_eig < 0.0);
  }
}

TEST_CASE("probe scan: serial and parallel agree bitwise") {
  const auto a = probe_values_serial(cplx(0.5, 0.1), cplx(0.2, 0.2), 2, 4000,
                                     3.0, 7, 123);
  const auto b = probe_values_parallel(cplx(0.5, 0.1), cplx(0.2, 0.2), 2, 4000,
                                       3.0, 7, 123, 4);
  CHECK(a == b);
}
