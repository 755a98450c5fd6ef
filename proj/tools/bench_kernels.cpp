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

// Times the three data-parallel kernels, serial reference vs OpenMP, and
// checks that the two paths agree bitwise.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>

#include "charpoly/hciz.hpp"
#include "charpoly/landscape.hpp"
#include "charpoly/mc.hpp"

namespace {

double seconds(void (*fn)(const void*), const void* arg) {
  const auto t0 = std::chrono::steady_clock::now();
  fn(arg);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <class F>
double timed(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int threads = omp_get_max_threads();
  std::uint64_t mc_samples = 2000, hciz_samples = 100000,
                probe_samples = 50000;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--threads") && i + 1 < argc)
      threads = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--mc-samples") && i + 1 < argc)
      mc_samples = std::strtoull(argv[++i], nullptr, 10);
    else if (!std::strcmp(argv[i], "--hciz-samples") && i + 1 < argc)
      hciz_samples = std::strtoull(argv[++i], nullptr, 10);
    else if (!std::strcmp(argv[i], "--probe-samples") && i + 1 < argc)
      probe_samples = std::strtoull(argv[++i], nullptr, 10);
  }
  std::printf("threads for the parallel path: %d\n\n", threads);
  std::printf("%-34s %10s %10s %8s %8s\n", "kernel", "serial[s]", "openmp[s]",
              "speedup", "bitwise");

  using namespace charpoly;
  (void)seconds;

  {
    const auto dist =
        sampling::make_distribution(sampling::DistKind::gaussian, 0.0);
    theory::SpectralConfig cfg;
    cfg.z0 = 0.0;
    cfg.zetas = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
    cfg.n = 64;
    std::vector<double> a, b;
    const double ts = timed([&] {
      a = mc::sample_integrands_serial(dist, cfg, 7, 0, mc_samples);
    });
    const double tp = timed([&] {
      b = mc::sample_integrands(dist, cfg, 7, 0, mc_samples, threads);
    });
    std::printf("%-34s %10.3f %10.3f %8.2f %8s\n",
                "mc integrands (n=64, m=2)", ts, tp, ts / tp,
                a == b ? "yes" : "NO");
  }
  {
    hciz::HcizCase c;
    c.d = 3;
    c.a_eigs = {cplx(0.1, 0.2), cplx(-0.4, 0.1), cplx(0.5, -0.3)};
    c.b_eigs = {cplx(0.6, 0.0), cplx(-0.2, -0.5), cplx(0.0, 0.4)};
    std::vector<cplx> a, b;
    const double ts =
        timed([&] { a = hciz::hciz_samples_serial(c, hciz_samples, 7, 0); });
    const double tp = timed(
        [&] { b = hciz::hciz_samples_parallel(c, hciz_samples, 7, 0, threads); });
    std::printf("%-34s %10.3f %10.3f %8.2f %8s\n", "hciz Haar samples (d=3)",
                ts, tp, ts / tp, a == b ? "yes" : "NO");
  }
  {
    const cplx kappa20(0.6, 0.0), z0(0.2, 0.1);
    std::vector<double> a, b;
    const double ts = timed([&] {
      a = landscape::probe_values_serial(kappa20, z0, 3, probe_samples, 3.0, 7,
                                         0);
    });
    const double tp = timed([&] {
      b = landscape::probe_values_parallel(kappa20, z0, 3, probe_samples, 3.0,
                                           7, 0, threads);
    });
    std::printf("%-34s %10.3f %10.3f %8.2f %8s\n",
                "landscape probes (m=3)", ts, tp, ts / tp,
                a == b ? "yes" : "NO");
  }
  return 0;
}
