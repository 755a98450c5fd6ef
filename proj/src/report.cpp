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

#include "charpoly/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "charpoly/verify.hpp"
#include "json.hpp"

namespace charpoly::report {

using nlohmann::json;

double RunConfig::effective_kappa22() const {
  if (kappa22) return *kappa22;
  return sampling::make_distribution(dist, kappa20).kappa22;
}

namespace {

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex values must be [re, im] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["dist"] = sampling::to_string(c.dist);
  j["kappa20"] = complex_to_json(c.kappa20);
  j["z0"] = complex_to_json(c.z0);
  json zc = json::array();
  for (const auto& cfg : c.zeta_configs) {
    json one = json::array();
    for (const cplx& z : cfg) one.push_back(complex_to_json(z));
    zc.push_back(one);
  }
  j["zeta_configs"] = zc;
  j["n_list"] = c.n_list;
  if (c.kappa22)
    j["kappa22"] = *c.kappa22;
  else
    j["kappa22"] = nullptr;
  j["samples"] = c.samples;
  j["batches"] = c.batches;
  j["seed"] = c.seed;
  j["output"] = c.output_path;
  j["estimator"] = mc::to_string(c.estimator);
  j["force"] = c.force;
  j["threads"] = c.threads;
  j["moment_count"] = c.moment_count;
  j["verify_trials"] = c.verify_trials;
  j["only"] = c.only;
  j["inputs"] = c.inputs;
  j["series"] = c.series;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.command = j.value("command", std::string());
  if (j.contains("dist"))
    c.dist = sampling::dist_kind_from_string(j["dist"].get<std::string>());
  if (j.contains("kappa20")) c.kappa20 = complex_from_json(j["kappa20"]);
  if (j.contains("z0")) c.z0 = complex_from_json(j["z0"]);
  if (j.contains("zeta_configs"))
    for (const auto& one : j["zeta_configs"]) {
      std::vector<cplx> cfg;
      for (const auto& z : one) cfg.push_back(complex_from_json(z));
      c.zeta_configs.push_back(std::move(cfg));
    }
  if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<int>>();
  if (j.contains("kappa22") && !j["kappa22"].is_null())
    c.kappa22 = j["kappa22"].get<double>();
  c.samples = j.value("samples", c.samples);
  c.batches = j.value("batches", c.batches);
  c.seed = j.value("seed", c.seed);
  c.output_path = j.value("output", c.output_path);
  if (j.contains("estimator"))
    c.estimator = mc::estimator_from_string(j["estimator"].get<std::string>());
  c.force = j.value("force", c.force);
  c.threads = j.value("threads", c.threads);
  c.moment_count = j.value("moment_count", c.moment_count);
  c.verify_trials = j.value("verify_trials", c.verify_trials);
  if (j.contains("only")) c.only = j["only"].get<std::vector<std::string>>();
  if (j.contains("inputs"))
    c.inputs = j["inputs"].get<std::vector<std::string>>();
  c.series = j.value("series", c.series);
  return c;
}

}  // namespace

std::string render_config(const RunConfig& cfg) {
  return config_to_json(cfg).dump(2);
}

RunConfig parse_config(const std::string& json_text) {
  return config_from_json(json::parse(json_text));
}

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos)
      return {std::stod(text), 0.0};  // bare real part accepted
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse complex value '" + text +
                                "' (expected re,im)");
  }
}

std::string render_complex(cplx v) {
  std::ostringstream os;
  os << std::setprecision(17) << v.real() << "," << v.imag();
  return os.str();
}

namespace {

json estimate_to_json(const mc::LogEstimate& e) {
  return json{{"log_mean", e.log_mean},
              {"stderr_log", e.stderr_log},
              {"batches", e.batches},
              {"samples_per_batch", e.samples_per_batch},
              {"method", mc::to_string(e.method)}};
}

json cell_to_json(const Cell& c) {
  json zetas = json::array();
  for (const cplx& z : c.ratio.cfg.zetas) zetas.push_back(complex_to_json(z));
  json f1 = json::array();
  for (const auto& e : c.ratio.f1) f1.push_back(estimate_to_json(e));
  return json{
      {"n", c.n},
      {"zeta_config_id", c.zeta_config_id},
      {"zetas", zetas},
      {"log_ratio", c.ratio.log_ratio},
      {"stderr", c.ratio.stderr_total},
      {"fm", estimate_to_json(c.ratio.fm)},
      {"f1", f1},
      {"singular_dropped", c.ratio.singular_dropped},
      {"predicted_log_mod_C", c.prediction.log_ratio_mod_constant},
      {"kernel_det_ratio", c.prediction.kernel_ratio},
      {"log_prefactor", c.prediction.log_prefactor},
      {"regime", theory::to_string(c.prediction.regime)},
      {"residual", c.residual},
  };
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

#ifndef CHARPOLY_GIT_REF
#define CHARPOLY_GIT_REF "unknown"
#endif

std::string render_record(const ResultRecord& rec) {
  json j;
  j["schema_version"] = rec.schema_version;
  j["tool_version"] = rec.tool_version;
  j["build_ref"] = CHARPOLY_GIT_REF;
  j["timestamp"] = rec.timestamp;
  j["config"] = config_to_json(rec.config);
  json cells = json::array();
  for (const auto& c : rec.cells) cells.push_back(cell_to_json(c));
  j["cells"] = cells;
  json fits = json::array();
  for (const auto& f : rec.fits)
    fits.push_back(json{{"scope", f.scope},
                        {"fitted_log_c", f.fitted_log_c},
                        {"stderr", f.stderr_fit},
                        {"residuals", f.residuals}});
  j["fits"] = fits;
  j["wall_seconds"] = rec.wall_seconds;
  j["singular_total"] = rec.singular_total;
  return j.dump(2) + "\n";
}

std::string render_record_csv(const ResultRecord& rec) {
  std::ostringstream os;
  os << "n,zeta_config_id,log_ratio,stderr,predicted_log_mod_C,residual\r\n";
  os << std::setprecision(17);
  for (const auto& c : rec.cells)
    os << c.n << "," << c.zeta_config_id << "," << c.ratio.log_ratio << ","
       << c.ratio.stderr_total << "," << c.prediction.log_ratio_mod_constant
       << "," << c.residual << "\r\n";
  return os.str();
}

ResultRecord run_estimate_pipeline(const RunConfig& cfg) {
  if (cfg.zeta_configs.empty())
    throw std::invalid_argument("estimate: need at least one zeta config");
  if (cfg.n_list.empty())
    throw std::invalid_argument("estimate: need at least one n");

  const auto t0 = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.timestamp = now_iso8601();
  rec.config = cfg;

  const auto dist = sampling::make_distribution(cfg.dist, cfg.kappa20);
  const double kappa22 = cfg.effective_kappa22();

  std::uint64_t component = 0;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    for (std::size_t ci = 0; ci < cfg.zeta_configs.size(); ++ci) {
      theory::SpectralConfig scfg;
      scfg.z0 = cfg.z0;
      scfg.zetas = cfg.zeta_configs[ci];
      scfg.n = cfg.n_list[ni];

      mc::EstimateOptions opts;
      opts.samples = cfg.samples;
      opts.batches = cfg.batches;
      opts.seed = cfg.seed;
      opts.component_base = component;
      component += scfg.m() + 1;
      opts.estimator = cfg.estimator;
      opts.threads = cfg.threads;
      opts.force = cfg.force;

      Cell cell;
      cell.n = scfg.n;
      cell.zeta_config_id = static_cast<int>(ci);
      cell.ratio = mc::estimate_ratio(dist, scfg, opts);
      cell.prediction = theory::predict(scfg, cfg.kappa20, kappa22, cfg.force);
      rec.singular_total += cell.ratio.singular_dropped;
      rec.cells.push_back(std::move(cell));
    }
  }

  // Constant fits: per n when there are >= 3 configs, and pooled over the
  // whole (m, z0, kappa20, dist) family.
  auto fit_over = [&](const std::string& scope, auto pred) {
    std::vector<mc::RatioEstimate> rs;
    std::vector<theory::TheoryPrediction> ps;
    std::vector<Cell*> used;
    for (auto& c : rec.cells)
      if (pred(c)) {
        rs.push_back(c.ratio);
        ps.push_back(c.prediction);
        used.push_back(&c);
      }
    if (rs.size() < 3) return;
    const auto fit = mc::fit_constant(rs, ps);
    FitRow row;
    row.scope = scope;
    row.fitted_log_c = fit.fitted_log_c;
    row.stderr_fit = fit.stderr_fit;
    row.residuals = fit.residuals;
    rec.fits.push_back(row);
    if (scope == "family")
      for (std::size_t i = 0; i < used.size(); ++i)
        used[i]->residual = fit.residuals[i];
  };
  for (const int n : cfg.n_list)
    fit_over("n=" + std::to_string(n),
             [n](const Cell& c) { return c.n == n; });
  fit_over("family", [](const Cell&) { return true; });

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rec;
}

namespace {

bool write_file(const std::string& path, const std::string& content,
                std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "cannot open " << path << " for writing\n";
    return false;
  }
  f << content;
  return true;
}

std::string output_base(const RunConfig& cfg, const std::string& fallback) {
  std::string base = cfg.output_path.empty() ? fallback : cfg.output_path;
  if (base.size() > 5 && base.substr(base.size() - 5) == ".json")
    base = base.substr(0, base.size() - 5);
  return base;
}

}  // namespace

int run_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.zeta_configs.empty() || cfg.zeta_configs[0].empty()) {
    err << "predict: need at least one --zeta\n";
    return kBadConfig;
  }
  theory::SpectralConfig scfg;
  scfg.z0 = cfg.z0;
  scfg.zetas = cfg.zeta_configs[0];
  scfg.n = cfg.n_list.empty() ? 1 : cfg.n_list[0];
  try {
    const auto p =
        theory::predict(scfg, cfg.kappa20, cfg.effective_kappa22(), cfg.force);
    out << std::setprecision(10);
    out << "regime:               " << theory::to_string(p.regime) << "\n";
    out << "kernel_det_ratio:     " << p.kernel_ratio << "\n";
    out << "log_prefactor:        " << p.log_prefactor << "\n";
    out << "predicted_ratio:      " << std::exp(p.log_ratio_mod_constant)
        << (p.regime == theory::Regime::complex_exact
                ? "\n"
                : "   (modulo the undetermined constant C)\n");
    out << "log_predicted_mod_C:  " << p.log_ratio_mod_constant << "\n";
    return kOk;
  } catch (const theory::ConditionViolation& e) {
    err << e.what() << "\n";
    return kConditionViolation;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kBadConfig;
  }
}

int run_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const ResultRecord rec = run_estimate_pipeline(cfg);
    const std::string base = output_base(cfg, "charpoly_run");
    if (!write_file(base + ".json", render_record(rec), err)) return kBadConfig;
    if (!write_file(base + ".csv", render_record_csv(rec), err))
      return kBadConfig;
    out << "wrote " << base << ".json and " << base << ".csv ("
        << rec.cells.size() << " cells, " << rec.singular_total
        << " singular samples dropped)\n";
    for (const auto& f : rec.fits)
      out << "fit " << f.scope << ": log C = " << f.fitted_log_c << " +- "
          << f.stderr_fit << "\n";
    return kOk;
  } catch (const theory::ConditionViolation& e) {
    err << e.what() << "\n";
    return kConditionViolation;
  } catch (const mc::EstimationDiagnostic& e) {
    err << e.what() << "\n";
    return kDiagnostic;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kBadConfig;
  }
}

int run_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto dist = sampling::make_distribution(cfg.dist, cfg.kappa20);
    rng::Stream s(cfg.seed, 0);
    const auto rep = sampling::empirical_moments(dist, cfg.moment_count, s);
    out << std::setprecision(10);
    out << "distribution:  " << sampling::to_string(cfg.dist)
        << "  kappa20 = " << render_complex(cfg.kappa20)
        << "  kappa22 = " << dist.kappa22 << "\n";
    out << "draws:         " << rep.count << "\n";
    out << "E x:           " << render_complex(rep.mean) << "  (se "
        << rep.se_mean << ")\n";
    out << "E |x|^2:       " << rep.abs2 << "  (se " << rep.se_abs2 << ")\n";
    out << "E x^2:         " << render_complex(rep.second) << "  (se "
        << rep.se_second << ")\n";
    out << "E |x|^4:       " << rep.abs4 << "  (se " << rep.se_abs4 << ")\n";
    const bool ok = rep.within_gates(cfg.kappa20);
    out << (ok ? "all moment gates pass (4 sigma)\n"
               : "MOMENT GATE FAILURE\n");
    return ok ? kOk : kDiagnostic;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kBadConfig;
  }
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  const auto wants = [&](const std::string& suite) {
    if (cfg.only.empty()) return true;
    return std::find(cfg.only.begin(), cfg.only.end(), suite) !=
           cfg.only.end();
  };
  std::vector<verify::CheckResult> all;
  auto absorb = [&](std::vector<verify::CheckResult> rs) {
    for (auto& r : rs) all.push_back(std::move(r));
  };
  if (wants("matalg")) absorb(verify::check_matalg(cfg.seed));
  if (wants("sampling")) absorb(verify::check_sampling(cfg.seed));
  if (wants("hciz"))
    absorb(verify::check_hciz(cfg.seed, cfg.verify_trials, 100000, 300000,
                              cfg.threads));
  if (wants("landscape")) {
    verify::LandscapeSizes sizes;
    sizes.threads = cfg.threads;
    absorb(verify::check_landscape(cfg.seed, sizes));
  }
  bool ok = true;
  for (const auto& r : all) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) out << "  -- " << r.detail;
    out << "\n";
    ok = ok && r.pass;
  }
  if (all.empty()) {
    err << "verify: no suite selected (known: matalg, sampling, hciz, "
           "landscape)\n";
    return kBadConfig;
  }
  return ok ? kOk : kDiagnostic;
}

int run_plotdata(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  csv << "series,x,y,yerr,y_theory\r\n";
  csv << std::setprecision(17);
  try {
    for (const auto& path : cfg.inputs) {
      std::ifstream f(path);
      if (!f) {
        err << "cannot read " << path << "\n";
        return kBadConfig;
      }
      std::stringstream buf;
      buf << f.rdbuf();
      const json j = json::parse(buf.str());
      double family_c = 0.0;
      for (const auto& fit : j.value("fits", json::array()))
        if (fit.value("scope", "") == "family")
          family_c = fit.value("fitted_log_c", 0.0);
      for (const auto& cell : j.value("cells", json::array())) {
        if (cfg.series == "ratio") {
          csv << "ratio," << cell["n"].get<double>() << ","
              << cell["log_ratio"].get<double>() << ","
              << cell["stderr"].get<double>() << ","
              << cell["predicted_log_mod_C"].get<double>() + family_c
              << "\r\n";
        } else if (cfg.series == "kernel") {
          const auto& zetas = cell["zetas"];
          if (zetas.size() != 2) continue;
          const cplx z1 = complex_from_json(zetas[0]);
          const cplx z2 = complex_from_json(zetas[1]);
          const double lp = cell["log_prefactor"].get<double>();
          csv << "kernel," << std::abs(z1 - z2) << ","
              << cell["log_ratio"].get<double>() - lp - family_c << ","
              << cell["stderr"].get<double>() << ","
              << std::log(cell["kernel_det_ratio"].get<double>()) << "\r\n";
        } else {
          err << "plotdata: unknown series '" << cfg.series << "'\n";
          return kBadConfig;
        }
      }
    }
  } catch (const json::exception& e) {
    err << "plotdata: bad record file: " << e.what() << "\n";
    return kBadConfig;
  }
  if (cfg.output_path.empty()) {
    out << csv.str();
    return kOk;
  }
  return write_file(cfg.output_path, csv.str(), err) ? kOk : kBadConfig;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "predict") return run_predict(cfg, out, err);
  if (cfg.command == "estimate") return run_estimate(cfg, out, err);
  if (cfg.command == "moments") return run_moments(cfg, out, err);
  if (cfg.command == "verify") return run_verify(cfg, out, err);
  if (cfg.command == "plotdata") return run_plotdata(cfg, out, err);
  err << "unknown command '" << cfg.command << "'\n";
  return kBadConfig;
}

}  // namespace charpoly::report
