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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include <gtest/gtest.h>

#include "relide/error.hpp"
#include "relide/experiment.hpp"

namespace relide {
namespace {

namespace fs = std::filesystem;

std::string config_error(const std::string& text) {
  try {
    parse_config(text, "t.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, Minimal) {
  const ExperimentConfig c = parse_config("name: x\nproblem: four_branch\nmethod: mcs\n");
  EXPECT_EQ(c.name, "x");
  EXPECT_EQ(c.output_dir, "runs/x");
  EXPECT_EQ(c.method, Method::kMcs);
  EXPECT_EQ(c.noise_mode, NoiseMode::kNone);
  ASSERT_TRUE(c.reference_pf.has_value());
  EXPECT_DOUBLE_EQ(*c.reference_pf, 4.51e-3);
  EXPECT_EQ(c.input->dim(), 2u);
  EXPECT_EQ(c.replications, 1u);
}

TEST(Config, ErrorsCarryLineAndField) {
  const std::string unknown = config_error("name: x\nproblem: hat\nmethod: mcs\nbogus: 1\n");
  EXPECT_NE(unknown.find("t.yaml:4"), std::string::npos) << unknown;
  EXPECT_NE(unknown.find("bogus"), std::string::npos) << unknown;

  const std::string bad_method = config_error("name: x\nproblem: hat\nmethod: magic\n");
  EXPECT_NE(bad_method.find("t.yaml:3"), std::string::npos) << bad_method;
  EXPECT_NE(bad_method.find("method"), std::string::npos);

  const std::string nested = config_error("name: x\nproblem: hat\nmethod: active\nactive:\n  budgte: 3\n");
  EXPECT_NE(nested.find("t.yaml:5"), std::string::npos) << nested;
  EXPECT_NE(nested.find("active"), std::string::npos);

  EXPECT_NE(config_error("name: x\nproblem: nope\nmethod: mcs\n").find("problem"), std::string::npos);
  EXPECT_NE(config_error("name: x\nproblem: hat\nmethod: mcs\nnoise:\n  sigma_eps: 1\n  alpha: 0.05\n").find("noise"),
            std::string::npos);
  EXPECT_NE(config_error("name: x\nproblem: hat\nmethod: denoise\n").find("design_sizes"), std::string::npos);
  EXPECT_NE(config_error("name: x\nproblem: hat\nmethod: mcs\ngamma: 2\n").find("gamma"), std::string::npos);
  EXPECT_NE(config_error("name: [x\n").find("t.yaml"), std::string::npos);
}

TEST(Config, ActiveAndNoise) {
  const ExperimentConfig c = parse_config(R"(
name: a
problem: hat
noise:
  alpha: [0.01, 0.05]
  samples: 20000
method: active
replications: 3
seed: 5
subset:
  n_per_level: 3000
gp:
  starts: 4
  tau: learn
active:
  n_ini: 12
  batch_size: [1, 3]
  budget: 30
  scoring_noise: known
  early_stop: {tol: 0.02, window: 4}
)");
  EXPECT_EQ(c.noise_mode, NoiseMode::kAlpha);
  EXPECT_EQ(c.noise_values, (std::vector<double>{0.01, 0.05}));
  EXPECT_EQ(c.calibration_samples, 20000u);
  EXPECT_EQ(c.calibration_seed, 5u);
  EXPECT_EQ(c.batch_sizes, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(c.active.n_ini, 12u);
  EXPECT_EQ(c.active.reliability.n_per_level, 3000u);
  EXPECT_EQ(c.active.fit.n_starts, 4u);
  EXPECT_TRUE(c.scoring_known_noise);
  EXPECT_TRUE(c.active.early_stop);
  EXPECT_EQ(c.active.early_stop_window, 4u);
}

TEST(Config, CustomInputAndExternal) {
  const ExperimentConfig c = parse_config(R"(
name: ext
problem:
  external: ./worker --flag
  dim: 2
  timeout: 2.5
input:
  variables:
    - {name: a, distribution: lognormal, mean: 3, std: 0.5}
    - {name: b, distribution: truncated_gaussian, mean: 1, std: 1, lower: 0}
  correlation: [[a, b, 0.3]]
method: mcs
)");
  ASSERT_TRUE(c.problem.external.has_value());
  EXPECT_EQ(c.problem.external->command, "./worker --flag");
  EXPECT_EQ(c.problem.external->timeout.count(), 2500);
  EXPECT_FALSE(c.reference_pf.has_value());
  EXPECT_DOUBLE_EQ(c.input->correlation()(0, 1), 0.3);
  EXPECT_EQ(c.input->names()[1], "b");
}

TEST(Config, Seeds) {
  const ExperimentConfig a = parse_config("name: s\nproblem: rs\nmethod: mcs\nseed: 9\nreplications: 3\n");
  EXPECT_EQ(a.seed_of(2), expand_seed(9, 2));
  const ExperimentConfig b = parse_config("name: s\nproblem: rs\nmethod: mcs\nreplications: 2\nseeds: [4, 8]\n");
  EXPECT_EQ(b.seed_of(1), 8u);
  EXPECT_NE(config_error("name: s\nproblem: rs\nmethod: mcs\nreplications: 3\nseeds: [4, 8]\n"), "");
}

TEST(Workers, Resolution) {
  ExperimentConfig c = parse_config("name: w\nproblem: rs\nmethod: mcs\nworkers: 3\n");
  unsetenv("RELIDE_WORKERS");
  EXPECT_EQ(resolve_workers(c, std::nullopt), 3u);
  setenv("RELIDE_WORKERS", "2", 1);
  EXPECT_EQ(resolve_workers(c, std::nullopt), 2u);
  EXPECT_EQ(resolve_workers(c, 5), 5u);
  setenv("RELIDE_WORKERS", "zero", 1);
  EXPECT_THROW(resolve_workers(c, std::nullopt), ConfigError);
  unsetenv("RELIDE_WORKERS");
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("relide_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(RunExperiment, McsFilesAndStatistics) {
  const ExperimentConfig c = parse_config(R"(
name: small
problem: rs
noise:
  variance: [0.5, 1.0]
method: mcs
replications: 4
seed: 3
mcs:
  n: 20000
)");
  const fs::path out = fresh_dir("mcs");
  RunOptions o;
  o.output_dir = out.string();
  o.workers = 2;
  const ExperimentOutcome r = run_experiment(c, o);
  EXPECT_EQ(r.failures, 0u);
  ASSERT_EQ(r.cases.size(), 2u);
  EXPECT_EQ(r.cases[0].name, "var-0.5");
  EXPECT_EQ(r.cases[1].name, "var-1");
  EXPECT_NEAR(r.cases[1].sigma_eps, 1.0, 1e-15);
  for (const char* f : {"manifest.json", "failures.json", "var-0.5/results.csv", "var-0.5/summary.json",
                        "var-1/runs/rep_000.json", "var-1/runs/rep_003.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  // No temporary files remain.
  for (const auto& e : fs::recursive_directory_iterator(out)) EXPECT_NE(e.path().extension(), ".tmp");
  const std::string csv = slurp(out / "var-1/results.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "replication,iteration,N,pf,beta,cov,evals,seconds");
  // Noisy pf of R - S with unit noise variance: Phi(-3 / sqrt 2).
  const double expected = 0.5 * std::erfc(3.0 / std::sqrt(2.0) / std::sqrt(2.0));
  EXPECT_NEAR(r.cases[1].pf_stats().median / expected, 1.0, 0.1);
  std::ostringstream rep;
  report(out.string(), rep);
  EXPECT_NE(rep.str().find("var-0.5"), std::string::npos);
  fs::remove_all(out);
}

TEST(RunExperiment, ReproducibleAcrossWorkerCounts) {
  const ExperimentConfig c = parse_config(R"(
name: det
problem: four_branch
noise:
  sigma_eps: 0.3
method: subset
replications: 3
seed: 17
subset:
  n_per_level: 2000
)");
  RunOptions o;
  o.write_files = false;
  o.workers = 1;
  const ExperimentOutcome a = run_experiment(c, o);
  o.workers = 3;
  const ExperimentOutcome b = run_experiment(c, o);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(a.cases[0].replications[r].result.pf, b.cases[0].replications[r].result.pf);
    EXPECT_EQ(a.cases[0].replications[r].seed, expand_seed(17, r));
  }
}

TEST(RunExperiment, FailuresAreRecorded) {
  const std::string text = std::string("name: fail\nproblem:\n  external: ") + RELIDE_ECHO_WORKER +
                           " --die-after 500\n  dim: 2\n  timeout: 5\ninput:\n  preset: hat\nmethod: mcs\n"
                           "replications: 2\nmcs:\n  n: 1000\n";
  const ExperimentConfig c = parse_config(text);
  const fs::path out = fresh_dir("fail");
  RunOptions o;
  o.output_dir = out.string();
  o.workers = 1;
  const ExperimentOutcome r = run_experiment(c, o);
  EXPECT_EQ(r.failures, 2u);
  EXPECT_EQ(r.cases[0].succeeded(), 0u);
  EXPECT_EQ(r.cases[0].replications[0].error_type, "EvaluationError");
  EXPECT_EQ(r.cases[0].replications[0].evals, 500u);
  EXPECT_NE(slurp(out / "failures.json").find("EvaluationError"), std::string::npos);
  EXPECT_NE(slurp(out / "noise-free/summary.json").find("\"succeeded\": 0"), std::string::npos);
  EXPECT_THROW(r.cases[0].pf_stats(), Error);
  fs::remove_all(out);
}

TEST(RunExperiment, DenoiseAndActiveSmoke) {
  const ExperimentConfig d = parse_config(R"(
name: dn
problem: rs
noise:
  variance: 1.0
method: denoise
replications: 2
gp:
  starts: 3
denoise:
  design_sizes: [50]
  estimator: mcs
mcs:
  n: 20000
)");
  RunOptions o;
  o.write_files = false;
  const ExperimentOutcome rd = run_experiment(d, o);
  EXPECT_EQ(rd.failures, 0u);
  EXPECT_EQ(rd.cases[0].name, "var-1_N-50");
  EXPECT_EQ(rd.cases[0].replications[0].evals, 50u);
  EXPECT_TRUE(rd.cases[0].replications[0].hyper.has_value());

  const ExperimentConfig a = parse_config(R"(
name: ac
problem: hat
noise:
  alpha: 0.05
  samples: 20000
method: active
replications: 1
subset:
  n_per_level: 2000
gp:
  starts: 2
active:
  n_ini: 8
  batch_size: [2]
  budget: 4
  max_candidates: 1000
)");
  const ExperimentOutcome ra = run_experiment(a, o);
  EXPECT_EQ(ra.failures, 0u);
  EXPECT_EQ(ra.cases[0].name, "alpha-0.05_K-2");
  EXPECT_EQ(ra.cases[0].replications[0].evals, 12u);
  EXPECT_EQ(ra.cases[0].replications[0].history.size(), 3u);
}

TEST(Calibrate, AlphaModeOnly) {
  const ExperimentConfig c =
      parse_config("name: c\nproblem: hat\nnoise:\n  alpha: [0.05, 0.1]\n  samples: 50000\nmethod: mcs\n");
  const auto cal = calibrate(c);
  ASSERT_EQ(cal.size(), 2u);
  EXPECT_LT(cal[0].result.sigma_eps, cal[1].result.sigma_eps);
  const ExperimentConfig n = parse_config("name: c\nproblem: hat\nmethod: mcs\n");
  EXPECT_THROW(calibrate(n), ConfigError);
}

}  // namespace
}  // namespace relide
