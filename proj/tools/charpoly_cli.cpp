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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "charpoly/report.hpp"

namespace {

using charpoly::report::RunConfig;

struct RawFlags {
  std::string config_file;
  std::string dist, kappa20, z0, estimator;
  std::vector<std::string> zetas;
  std::vector<int> n_list;
  std::uint64_t samples = 0, batches = 0, seed = 0, count = 0, trials = 0;
  std::string out, series;
  std::vector<std::string> only, inputs;
  int threads = 0;
  bool force = false;
  double kappa22 = 0.0;
};

void add_common(CLI::App* cmd, RawFlags& f) {
  cmd->add_option("--config", f.config_file,
                  "JSON config file (flags override)");
  cmd->add_option("--dist", f.dist,
                  "entry law: gaussian | rademacher-pair | uniform-pair");
  cmd->add_option("--kappa20", f.kappa20, "second moment E x^2, as re,im");
  cmd->add_option("--z0", f.z0, "bulk center, as re,im");
  cmd->add_option("--zeta", f.zetas, "spectral offset, as re,im (repeatable)");
  cmd->add_option("--n", f.n_list, "matrix size (repeatable)");
  cmd->add_option("--samples", f.samples, "Monte Carlo samples per component");
  cmd->add_option("--batches", f.batches, "log-mean-exp batches");
  cmd->add_option("--seed", f.seed, "RNG seed (default: CHARPOLY_SEED env)");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--estimator", f.estimator, "mean | median-of-means");
  cmd->add_option("--threads", f.threads, "worker thread cap");
  cmd->add_flag("--force", f.force, "run outside the validity region");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Monte Carlo and closed-form toolkit for characteristic-polynomial "
      "correlation ratios of i.i.d. non-Hermitian random matrices"};
  app.require_subcommand(1);

  RawFlags f;
  auto* predict = app.add_subcommand("predict", "evaluate the limit formula");
  add_common(predict, f);
  predict->add_option("--kappa22", f.kappa22, "fourth cumulant");

  auto* estimate =
      app.add_subcommand("estimate", "Monte Carlo ratio estimation");
  add_common(estimate, f);

  auto* verify = app.add_subcommand("verify", "run certification harnesses");
  add_common(verify, f);
  verify->add_option("--only", f.only,
                     "suite filter: matalg sampling hciz landscape");
  verify->add_option("--trials", f.trials, "hciz trials per d");

  auto* moments = app.add_subcommand("moments", "sampling self-test");
  add_common(moments, f);
  moments->add_option("--count", f.count, "number of draws");

  auto* plotdata = app.add_subcommand("plotdata", "export plot series CSV");
  add_common(plotdata, f);
  plotdata->add_option("--in", f.inputs, "result record JSON (repeatable)");
  plotdata->add_option("--series", f.series, "ratio | kernel");

  CLI11_PARSE(app, argc, argv);
  CLI::App* active = app.get_subcommands()[0];

  RunConfig cfg;
  if (const char* env = std::getenv("CHARPOLY_SEED"))
    cfg.seed = std::strtoull(env, nullptr, 10);

  try {
    if (active->count("--config")) {
      std::ifstream in(f.config_file);
      if (!in) {
        std::cerr << "cannot read config file " << f.config_file << "\n";
        return charpoly::report::kBadConfig;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      cfg = charpoly::report::parse_config(buf.str());
    }
    cfg.command = active->get_name();
    const auto given = [&](const char* name) {
      return active->count(name) > 0;
    };
    if (given("--dist"))
      cfg.dist = charpoly::sampling::dist_kind_from_string(f.dist);
    if (given("--kappa20"))
      cfg.kappa20 = charpoly::report::parse_complex(f.kappa20);
    if (given("--z0")) cfg.z0 = charpoly::report::parse_complex(f.z0);
    if (given("--zeta")) {
      std::vector<charpoly::cplx> one;
      for (const auto& z : f.zetas)
        one.push_back(charpoly::report::parse_complex(z));
      cfg.zeta_configs = {one};
    }
    if (given("--n")) cfg.n_list = f.n_list;
    if (given("--samples")) cfg.samples = f.samples;
    if (given("--batches")) cfg.batches = f.batches;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--out")) cfg.output_path = f.out;
    if (given("--estimator"))
      cfg.estimator = charpoly::mc::estimator_from_string(f.estimator);
    if (given("--threads")) cfg.threads = f.threads;
    if (given("--force")) cfg.force = true;
    if (active == predict && given("--kappa22")) cfg.kappa22 = f.kappa22;
    if (active == verify && given("--only")) cfg.only = f.only;
    if (active == verify && given("--trials")) cfg.verify_trials = f.trials;
    if (active == moments && given("--count")) cfg.moment_count = f.count;
    if (active == plotdata && given("--in")) cfg.inputs = f.inputs;
    if (active == plotdata && given("--series")) cfg.series = f.series;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return charpoly::report::kBadConfig;
  }

  return charpoly::report::dispatch(cfg, std::cout, std::cerr);
}
