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

// Acceptance suite: every release criterion at its stated tolerance, one
// pass/fail line each. Sizes and thresholds are pinned here, not
// configurable; use --only N while developing.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "charpoly/hciz.hpp"
#include "charpoly/landscape.hpp"
#include "charpoly/mc.hpp"
#include "charpoly/report.hpp"
#include "charpoly/verify.hpp"

using namespace charpoly;

namespace {

constexpr std::uint64_t kSeed = 1;

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report_line(int criterion, bool pass, const std::string& what,
                 double secs) {
  std::printf("[%s] criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL",
              criterion, what.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

int threads() { return omp_get_max_threads(); }

// ---------------------------------------------------------------------------

void criterion1_pfaffian() {
  Timer t;
  const auto results = verify::check_matalg(kSeed);
  bool pass = verify::all_pass(results);
  std::string detail;
  for (const auto& r : results)
    if (!r.pass) detail += r.name + "; ";
  const double secs = t.seconds();
  if (secs >= 10.0) pass = false;
  report_line(1, pass,
              "pfaffian suite: Pf^2=det (dims 2-12, 200 each) and congruence "
              "covariance at 1e-9" +
                  (detail.empty() ? "" : " -- " + detail),
              secs);
}

void criterion2_hciz() {
  Timer t;
  const auto results =
      verify::check_hciz(kSeed, 20, 100000, 300000, threads());
  bool pass = verify::all_pass(results);
  std::string detail;
  for (const auto& r : results) detail += r.detail + "; ";
  const double secs = t.seconds();
  if (secs >= 180.0) pass = false;
  report_line(2, pass,
              "hciz closed form vs Haar MC, d=2 (1e5) and d=3 (3e5), >=95% "
              "within 4 sigma -- " +
                  detail,
              secs);
}

void criterion3_saddle() {
  Timer t;
  verify::LandscapeSizes sizes;
  sizes.pairs_interior = 10;
  sizes.pairs_boundary = 5;
  sizes.trials = 100000;
  sizes.threads = threads();
  sizes.m_values = {2, 3};
  const auto results = verify::check_landscape(kSeed, sizes);
  bool pass = verify::all_pass(results);
  std::string detail;
  for (const auto& r : results)
    if (!r.pass) detail += r.name + " (" + r.detail + "); ";
  const double secs = t.seconds();
  if (secs >= 300.0) pass = false;
  report_line(3, pass,
              "saddle certification: 15 parameter pairs, m in {2,3}, 1e5 "
              "probes, gradient<1e-6, Hessian negative, reduced form to 1e-9" +
                  (detail.empty() ? "" : " -- " + detail),
              secs);
}

void criterion4_f1() {
  Timer t;
  const auto dist =
      sampling::make_distribution(sampling::DistKind::gaussian, 0.0);
  bool pass = true;
  std::string detail;
  std::uint64_t component = 100;
  for (const cplx z : {cplx(0, 0), cplx(0.5, 0)}) {
    std::vector<double> gaps, ses;
    for (const int n : {32, 64, 128}) {
      theory::SpectralConfig cfg;
      cfg.z0 = z;
      cfg.zetas = {cplx(0, 0)};
      cfg.n = n;
      const auto values = mc::sample_integrands(
          dist, cfg, kSeed, (component++) * mc::kComponentStride, 100000,
          threads());
      const auto est = mc::estimate_log_expectation(values, 8);
      const double gap = est.log_mean - theory::f1_asymptotic_log(z, n);
      gaps.push_back(gap);
      ses.push_back(est.stderr_log);
    }
    detail += "z=" + fmt(z.real()) + ": gaps " + fmt(gaps[0]) + ", " +
              fmt(gaps[1]) + ", " + fmt(gaps[2]) + "; ";
    // strict tolerance at n=128
    if (std::abs(gaps[2]) >= 0.1) pass = false;
    // decrease across n, allowing 4-sigma Monte Carlo noise: the true
    // offsets are O(1/n), far below the noise floor at 1e5 samples
    for (int i = 1; i < 3; ++i) {
      const double allowance =
          4.0 * std::hypot(ses[i], ses[i - 1]);
      if (std::abs(gaps[i]) > std::abs(gaps[i - 1]) + allowance) pass = false;
    }
  }
  const double secs = t.seconds();
  if (secs >= 600.0) pass = false;
  report_line(4, pass,
              "f1 asymptotic: |log f1 - asymptote| shrinking in n and < 0.1 "
              "at n=128 -- " +
                  detail,
              secs);
}

// Heavy-tail guard: the median-of-means combine must sit within 4 stderr of
// the plain-mean combine on every estimate of an acceptance run.
bool median_guard(const report::ResultRecord& rec, std::string* detail) {
  bool ok = true;
  for (const auto& cell : rec.cells) {
    std::vector<const mc::LogEstimate*> parts = {&cell.ratio.fm};
    for (const auto& e : cell.ratio.f1) parts.push_back(&e);
    for (const auto* e : parts)
      if (std::abs(e->log_mean - e->log_mean_alt) >
          4.0 * e->stderr_log + 1e-12) {
        ok = false;
        *detail += "median/mean combine gap " +
                   fmt(std::abs(e->log_mean - e->log_mean_alt)) + " at n=" +
                   std::to_string(cell.n) + "; ";
      }
  }
  return ok;
}

report::RunConfig limit_config(cplx kappa20, sampling::DistKind kind) {
  report::RunConfig cfg;
  cfg.command = "estimate";
  cfg.dist = kind;
  cfg.kappa20 = kappa20;
  cfg.z0 = 0.0;
  cfg.zeta_configs = {{cplx(1, 0), cplx(0, 0)},
                      {cplx(0.5, 0), cplx(-0.5, 0)},
                      {cplx(1, 1), cplx(0, 0)}};
  cfg.samples = 200000;
  cfg.batches = 8;
  cfg.seed = kSeed;
  cfg.threads = threads();
  return cfg;
}

void criterion5_complex_case() {
  Timer t;
  report::RunConfig cfg = limit_config(0.0, sampling::DistKind::gaussian);
  cfg.n_list = {48, 96};
  const auto rec = report::run_estimate_pipeline(cfg);
  bool pass = true;
  std::string detail;
  for (const auto& cell : rec.cells) {
    const double err =
        cell.ratio.log_ratio - cell.prediction.log_ratio_mod_constant;
    const double tol = std::max(3.0 * cell.ratio.stderr_total, 0.15);
    detail += "n=" + std::to_string(cell.n) + "/cfg" +
              std::to_string(cell.zeta_config_id) + " " + fmt(err) + " (tol " +
              fmt(tol) + (std::abs(err) > tol ? ", VIOLATED" : "") + "); ";
    if (std::abs(err) > tol) pass = false;
  }
  double fitted = 0, fitted_se = 0;
  for (const auto& f : rec.fits)
    if (f.scope == "family") {
      fitted = f.fitted_log_c;
      fitted_se = f.stderr_fit;
    }
  const double fit_tol = std::max(3.0 * fitted_se, 0.15);
  if (std::abs(fitted) >= fit_tol) {
    pass = false;
    detail += "fitted log C " + fmt(fitted) + " exceeds " + fmt(fit_tol);
  }
  if (!median_guard(rec, &detail)) pass = false;
  const double secs = t.seconds();
  if (secs >= 1800.0) pass = false;
  report_line(5, pass,
              "complex-case limit: 3 zeta-configs, n in {48,96}, 2e5 samples; "
              "ratios within max(3se, 0.15); |log C| = " +
                  fmt(std::abs(fitted)) + " < " + fmt(fit_tol) +
                  (detail.empty() ? "" : " -- " + detail),
              secs);
}

void criterion6_kappa22() {
  // The criterion pins (m, z0, zeta) and the tolerance but not the scale;
  // n = 64 with 5e5 samples keeps the estimator's tail bias inside the
  // stated budget (and it cancels in the distribution difference anyway).
  Timer t;
  const int n = 64;
  theory::SpectralConfig scfg;
  scfg.z0 = 0.0;
  scfg.zetas = {cplx(1, 0), cplx(0, 0)};
  scfg.n = n;

  mc::EstimateOptions opts;
  opts.samples = 500000;
  opts.batches = 8;
  opts.seed = kSeed;
  opts.threads = threads();

  const auto gauss =
      sampling::make_distribution(sampling::DistKind::gaussian, 0.0);
  const auto rad =
      sampling::make_distribution(sampling::DistKind::rademacher_pair, 0.0);
  opts.component_base = 0;
  const auto rg = mc::estimate_ratio(gauss, scfg, opts);
  opts.component_base = 8;
  const auto rr = mc::estimate_ratio(rad, scfg, opts);

  // (m^2-m)/2 kappa22 (1-|z0|^2)^2 = -1 for kappa22 = -1, m = 2, z0 = 0
  const double diff = rr.log_ratio - rg.log_ratio;
  const double se = std::hypot(rr.stderr_total, rg.stderr_total);
  const double tol = std::max(4.0 * se, 0.2);
  bool pass = std::abs(diff - (-1.0)) <= tol;
  const double secs = t.seconds();
  if (secs >= 1800.0) pass = false;
  report_line(6, pass,
              "kappa22 sensitivity: rademacher minus gaussian log-ratio = " +
                  fmt(diff) + ", expected -1 within " + fmt(tol),
              secs);
}

void criterion7_interpolation() {
  Timer t;
  const cplx kappa20(0.6, 0.0);
  bool pass = true;
  std::string detail;

  report::RunConfig base = limit_config(kappa20, sampling::DistKind::gaussian);
  base.z0 = cplx(0.2, 0.0);
  base.n_list = {64};
  base.samples = 500000;  // sample count is free here; sized for honest se

  report::RunConfig rad = base;
  rad.dist = sampling::DistKind::rademacher_pair;
  rad.seed = kSeed + 1;

  const auto rec_g = report::run_estimate_pipeline(base);
  const auto rec_r = report::run_estimate_pipeline(rad);

  auto family_fit = [](const report::ResultRecord& rec, double* se) {
    for (const auto& f : rec.fits)
      if (f.scope == "family") {
        *se = f.stderr_fit;
        return f.fitted_log_c;
      }
    *se = 0;
    return 0.0;
  };
  double se_g = 0, se_r = 0;
  const double c_g = family_fit(rec_g, &se_g);
  const double c_r = family_fit(rec_r, &se_r);
  const double se = std::hypot(se_g, se_r);
  if (std::abs(c_g - c_r) > 4.0 * se) {
    pass = false;
    detail += "constants differ: " + fmt(c_g) + " vs " + fmt(c_r) +
              " (4se = " + fmt(4 * se) + "); ";
  }
  for (const auto* rec : {&rec_g, &rec_r}) {
    for (const auto& cell : rec->cells)
      if (std::abs(cell.residual) > 4.0 * cell.ratio.stderr_total) {
        pass = false;
        detail += "residual " + fmt(cell.residual) + " at cfg " +
                  std::to_string(cell.zeta_config_id) + "; ";
      }
    if (!median_guard(*rec, &detail)) pass = false;
  }
  const double secs = t.seconds();
  if (secs >= 2700.0) pass = false;
  report_line(7, pass,
              "interpolation consistency at kappa20=0.6: fitted constants " +
                  fmt(c_g) + " (gaussian) vs " + fmt(c_r) +
                  " (rademacher) agree within 4 sigma; residuals flat" +
                  (detail.empty() ? "" : " -- " + detail),
              secs);
}

void criterion8_determinism() {
  Timer t;
  bool pass = true;
  std::string detail;

  const auto dist =
      sampling::make_distribution(sampling::DistKind::gaussian, cplx(0.3, 0.2));
  theory::SpectralConfig cfg;
  cfg.z0 = cplx(0.1, 0.0);
  cfg.zetas = {cplx(1, 0), cplx(0, 0)};
  cfg.n = 16;

  {  // per-sample integrands: serial vs parallel vs rerun, bitwise
    const auto a = mc::sample_integrands_serial(dist, cfg, kSeed, 0, 20000);
    const auto b = mc::sample_integrands(dist, cfg, kSeed, 0, 20000, threads());
    const auto c = mc::sample_integrands(dist, cfg, kSeed, 0, 20000, 3);
    if (a != b || a != c) {
      pass = false;
      detail += "integrand arrays differ; ";
    }
  }
  {  // aggregate numbers across reruns
    mc::EstimateOptions opts;
    opts.samples = 20000;
    opts.seed = kSeed;
    opts.threads = threads();
    const auto r1 = mc::estimate_ratio(dist, cfg, opts);
    const auto r2 = mc::estimate_ratio(dist, cfg, opts);
    if (std::abs(r1.log_ratio - r2.log_ratio) > 1e-12 ||
        std::abs(r1.stderr_total - r2.stderr_total) > 1e-12) {
      pass = false;
      detail += "ratio aggregates differ; ";
    }
  }
  {  // hciz samples bitwise + estimate equality
    hciz::HcizCase c;
    c.d = 3;
    c.a_eigs = {cplx(0.4, 0), cplx(-0.3, 0.5), cplx(0.1, -0.6)};
    c.b_eigs = {cplx(0.9, 0), cplx(-0.2, -0.2), cplx(0.3, 0.6)};
    const auto a = hciz::hciz_samples_serial(c, 20000, kSeed, 0);
    const auto b = hciz::hciz_samples_parallel(c, 20000, kSeed, 0, threads());
    if (a != b) {
      pass = false;
      detail += "hciz samples differ; ";
    }
  }
  {  // landscape probe values bitwise
    const auto a = landscape::probe_values_serial(cplx(0.5, 0.1),
                                                  cplx(0.2, 0.1), 2, 20000,
                                                  3.0, kSeed, 0);
    const auto b = landscape::probe_values_parallel(
        cplx(0.5, 0.1), cplx(0.2, 0.1), 2, 20000, 3.0, kSeed, 0, threads());
    if (a != b) {
      pass = false;
      detail += "landscape probes differ; ";
    }
  }
  {  // moments rerun
    rng::Stream s1(kSeed, 60), s2(kSeed, 60);
    const auto m1 = sampling::empirical_moments(dist, 100000, s1);
    const auto m2 = sampling::empirical_moments(dist, 100000, s2);
    if (m1.mean != m2.mean || m1.abs4 != m2.abs4) {
      pass = false;
      detail += "moment reports differ; ";
    }
  }
  {  // full pipeline rerun at smoke scale
    report::RunConfig rc = limit_config(0.0, sampling::DistKind::gaussian);
    rc.n_list = {16};
    rc.samples = 5000;
    const auto rec1 = report::run_estimate_pipeline(rc);
    const auto rec2 = report::run_estimate_pipeline(rc);
    for (std::size_t i = 0; i < rec1.cells.size(); ++i)
      if (std::abs(rec1.cells[i].ratio.log_ratio -
                   rec2.cells[i].ratio.log_ratio) > 1e-12) {
        pass = false;
        detail += "pipeline rerun differs; ";
      }
  }
  report_line(8, pass,
              "determinism: bitwise per-sample integrands (serial, parallel, "
              "rerun) and 1e-12 aggregates" +
                  (detail.empty() ? "" : " -- " + detail),
              t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
      only = std::atoi(argv[++i]);

  const auto want = [&](int k) { return only == 0 || only == k; };
  if (want(1)) criterion1_pfaffian();
  if (want(2)) criterion2_hciz();
  if (want(3)) criterion3_saddle();
  if (want(4)) criterion4_f1();
  if (want(5)) criterion5_complex_case();
  if (want(6)) criterion6_kappa22();
  if (want(7)) criterion7_interpolation();
  if (want(8)) criterion8_determinism();

  if (g_failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
