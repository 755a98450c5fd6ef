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

#ifndef CHARPOLY_REPORT_HPP
#define CHARPOLY_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "charpoly/mc.hpp"

namespace charpoly::report {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Exit code contract: 0 success, 1 theorem-condition violation,
/// 2 bad config, 3 estimation/verification diagnostic.
enum ExitCode : int {
  kOk = 0,
  kConditionViolation = 1,
  kBadConfig = 2,
  kDiagnostic = 3,
};

struct RunConfig {
  std::string command;  // predict | estimate | verify | plotdata | moments
  sampling::DistKind dist = sampling::DistKind::gaussian;
  cplx kappa20{0.0, 0.0};
  cplx z0{0.0, 0.0};
  std::vector<std::vector<cplx>> zeta_configs;
  std::vector<int> n_list;
  std::optional<double> kappa22;  // derived from dist when absent
  std::uint64_t samples = 100000;
  std::uint64_t batches = 8;
  std::uint64_t seed = 1;
  std::string output_path;
  mc::Estimator estimator = mc::Estimator::mean;
  bool force = false;
  int threads = 1;
  std::uint64_t moment_count = 1000000;
  std::uint64_t verify_trials = 20;
  std::vector<std::string> only;    // verify: subset of suites
  std::vector<std::string> inputs;  // plotdata: record files
  std::string series = "ratio";     // plotdata: ratio | kernel

  bool operator==(const RunConfig&) const = default;

  double effective_kappa22() const;
};

/// Lossless JSON round trip (complex values as [re, im] arrays).
std::string render_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& json_text);

/// CLI complex syntax "re,im"; parse-render idempotent.
cplx parse_complex(const std::string& text);
std::string render_complex(cplx v);

struct Cell {
  int n = 0;
  int zeta_config_id = 0;
  mc::RatioEstimate ratio;
  theory::TheoryPrediction prediction;
  double residual = 0;  // after the family fit (0 when no fit ran)
};

struct FitRow {
  std::string scope;  // "n=48" or "family"
  double fitted_log_c = 0;
  double stderr_fit = 0;
  std::vector<double> residuals;
};

struct ResultRecord {
  int schema_version = kSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // volatile field, excluded from determinism checks
  RunConfig config;
  std::vector<Cell> cells;
  std::vector<FitRow> fits;
  double wall_seconds = 0;  // volatile
  std::uint64_t singular_total = 0;
};

std::string render_record(const ResultRecord& rec);
/// RFC-4180 rows: n, zeta_config_id, log_ratio, stderr,
/// predicted_log_mod_C, residual.
std::string render_record_csv(const ResultRecord& rec);

/// The estimation pipeline behind `estimate`: every (n, zeta-config) cell,
/// predictions, and the constant fits (per n with >= 3 configs, plus the
/// pooled n-family fit).
ResultRecord run_estimate_pipeline(const RunConfig& cfg);

int run_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_plotdata(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace charpoly::report

#endif
