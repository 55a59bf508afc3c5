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

// relide command-line driver.
//
//   relide run <config> [--workers N] [--out DIR] [--quiet]
//   relide report <dir>
//   relide calibrate <config>
//   relide oracle rs [--mu-r ..] [--sigma-r ..] [--mu-s ..] [--sigma-s ..] [--sigma-eps ..] [--gamma ..]
//
// Exit status: 0 success, 2 configuration or usage error, 3 runtime failure
// (including runs with failed replications).

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relide/error.hpp"
#include "relide/experiment.hpp"
#include "relide/reliability.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kRuntimeExit = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reliability analysis with noisy limit-state functions"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::size_t> workers;
  std::optional<std::string> out_dir;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run an experiment");
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("--workers", workers, "Worker threads (overrides RELIDE_WORKERS and the config)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory (overrides the config)");
  run->add_flag("--quiet", quiet, "No progress output");

  std::string run_dir;
  auto* rep = app.add_subcommand("report", "Summarize a finished run directory");
  rep->add_option("dir", run_dir, "Run output directory")->required();

  auto* cal = app.add_subcommand("calibrate", "Print the calibrated noise level for each alpha");
  cal->add_option("config", config_path, "Experiment config file")->required();

  double mu_r = 5.0, sigma_r = 0.8, mu_s = 2.0, sigma_s = 0.6, sigma_eps = 0.0, gamma = 1.0;
  auto* oracle = app.add_subcommand("oracle", "Closed-form reference values");
  oracle->require_subcommand(1);
  auto* rs = oracle->add_subcommand("rs", "Failure probability of gamma (R - S), with and without noise");
  rs->add_option("--mu-r", mu_r, "Mean of R")->capture_default_str();
  rs->add_option("--sigma-r", sigma_r, "Standard deviation of R")->capture_default_str();
  rs->add_option("--mu-s", mu_s, "Mean of S")->capture_default_str();
  rs->add_option("--sigma-s", sigma_s, "Standard deviation of S")->capture_default_str();
  rs->add_option("--sigma-eps", sigma_eps, "Noise standard deviation")->capture_default_str();
  rs->add_option("--gamma", gamma, "Scale factor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*run) {
      const relide::ExperimentConfig cfg = relide::load_config(config_path);
      relide::RunOptions opts;
      opts.workers = workers;
      opts.output_dir = out_dir;
      if (!quiet) opts.log = &std::cerr;
      const relide::ExperimentOutcome res = relide::run_experiment(cfg, opts);
      relide::report(res.output_dir, std::cout);
      if (res.failures > 0) {
        std::cerr << res.failures << " replication(s) failed; see " << res.output_dir << "/failures.json\n";
        return kRuntimeExit;
      }
    } else if (*rep) {
      relide::report(run_dir, std::cout);
    } else if (*cal) {
      const relide::ExperimentConfig cfg = relide::load_config(config_path);
      for (const auto& c : relide::calibrate(cfg)) {
        std::printf("alpha %-8g sigma_eps %.6g  q_alpha %.6g  roi_points %zu\n", c.alpha, c.result.sigma_eps,
                    c.result.q_alpha, c.result.roi_count);
      }
    } else if (*rs) {
      const relide::RsAnalytic r = relide::rs_analytic(mu_r, sigma_r, mu_s, sigma_s, sigma_eps, gamma);
      std::printf("pf_free %.17g\npf_noisy %.17g\nbeta_free %.17g\nbeta_noisy %.17g\n", r.pf_free, r.pf_noisy,
                  relide::beta_from_pf(r.pf_free), relide::beta_from_pf(r.pf_noisy));
    }
  } catch (const relide::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeExit;
  }
  return 0;
}
