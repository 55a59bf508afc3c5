// Copyright 2026 The relide Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relide/active.hpp"
#include "relide/external_model.hpp"
#include "relide/gp.hpp"
#include "relide/input_model.hpp"
#include "relide/reliability.hpp"
#include "relide/stats.hpp"

namespace relide {

enum class Method { kMcs, kSubset, kDenoise, kActive };
enum class NoiseMode { kNone, kSigma, kVariance, kAlpha };

const char* to_string(Method m);
const char* to_string(NoiseMode m);

struct ProblemSpec {
  // Builtin name ("rs", "four_branch", "hat"); empty for an external model.
  std::string builtin;
  std::optional<ExternalCommand> external;
  std::size_t dim = 0;
  double gamma = 1.0;
};

/// Parsed experiment configuration. The file format is documented in
/// docs/config.md; parse errors carry the line and field of the offending
/// entry.
struct ExperimentConfig {
  std::string name;
  // Relative to the working directory of the run.
  std::string output_dir;

  ProblemSpec problem;
  std::optional<ProbInput> input;
  std::optional<double> reference_pf;

  NoiseMode noise_mode = NoiseMode::kNone;
  // One case per value (sigma, variance or alpha depending on the mode).
  std::vector<double> noise_values;
  std::size_t calibration_samples = kDefaultCalibrationSamples;
  std::uint64_t calibration_seed = 0;

  Method method = Method::kMcs;
  std::size_t replications = 1;
  std::uint64_t base_seed = 0;
  // Explicit per-replication seeds; empty means expand_seed(base_seed, r).
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> workers;

  McsOptions mcs;
  SubsetOptions subset;
  FitOptions gp;

  // denoise: GP fitted once on an LHS design of each size, pf estimated on
  // its mean with `denoise_estimator` ("mcs" or "subset").
  std::vector<std::size_t> design_sizes;
  std::string denoise_estimator = "subset";

  // active: one case per batch size.
  ActiveConfig active;
  std::vector<std::size_t> batch_sizes{1};
  // Score with the true noise variance instead of the fitted one.
  bool scoring_known_noise = false;

  std::uint64_t seed_of(std::size_t replication) const;
};

// Throws ConfigError with "<file>:<line>: <field>: <message>" diagnostics.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");

struct ReplicationOutcome {
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::string error_type;
  RelResult result;
  std::vector<HistoryRow> history;
  // Final design (denoise, active); standard and physical coordinates.
  PointMatrix standard;
  PointMatrix physical;
  Eigen::VectorXd y;
  std::optional<GpHyper> hyper;
  double sigma2_total = 0.0;
  std::size_t evals = 0;
  double seconds = 0.0;
  // Active loop counters.
  std::size_t duplicates = 0;
  std::size_t short_batches = 0;
  std::size_t training_retries = 0;
  bool early_stopped = false;
};

struct CaseOutcome {
  std::string name;
  double sigma_eps = 0.0;
  std::optional<double> noise_value;
  std::size_t design_size = 0;
  std::size_t batch_size = 0;
  std::vector<ReplicationOutcome> replications;

  std::size_t succeeded() const;
  // Box statistics of the final pf / beta / evaluation counts over the
  // successful replications. Throws Error when none succeeded.
  BoxStats pf_stats() const;
  BoxStats beta_stats() const;
  BoxStats evals_stats() const;
};

struct RunOptions {
  std::optional<std::size_t> workers;
  std::optional<std::string> output_dir;
  // Progress lines; null for silence.
  std::ostream* log = nullptr;
  // Skip all file output (library use).
  bool write_files = true;
};

struct ExperimentOutcome {
  std::string output_dir;
  std::vector<CaseOutcome> cases;
  std::size_t failures = 0;
};

/// Runs every case and replication of the experiment on a pool of worker
/// threads. With write_files set, produces under the output directory:
///
///   manifest.json                 config echo and case list
///   failures.json                 failed replications (possibly empty)
///   <case>/results.csv            replication,iteration,N,pf,beta,cov,evals,seconds
///   <case>/summary.json           box statistics of pf, beta and evals
///   <case>/runs/rep_<r>.json      one run record per replication
///
/// Every file is written to a temporary name and renamed into place.
/// Replication failures are recorded, not thrown.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

// Worker count: explicit value, else RELIDE_WORKERS, else config, else the
// number of hardware threads.
std::size_t resolve_workers(const ExperimentConfig& cfg, std::optional<std::size_t> explicit_workers);

// Prints the per-case summary table of a finished run directory.
void report(const std::string& run_dir, std::ostream& out);

struct NoiseCalibration {
  double alpha = 0.0;
  CalibrationResult result;
};

// Calibrated sigma_eps for each alpha of an alpha-mode config.
std::vector<NoiseCalibration> calibrate(const ExperimentConfig& cfg);

}  // namespace relide
