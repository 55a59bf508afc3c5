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

#include <cmath>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "relide/error.hpp"
#include "relide/experiment.hpp"
#include "relide/problems.hpp"
#include "relide/random.hpp"

namespace relide {

namespace {

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (node.IsDefined() && node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
    os << ": " << field << ": " << msg;
    throw ConfigError(os.str());
  }

  void known_keys(const YAML::Node& map, const std::string& field, std::initializer_list<const char*> keys) const {
    if (!map.IsMap()) fail(map, field, "expected a mapping");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) fail(kv.first, field.empty() ? key : field + "." + key, "unknown key");
    }
  }

  double number(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a number");
    try {
      const auto v = n.as<double>();
      if (!std::isfinite(v)) fail(n, field, "must be finite");
      return v;
    } catch (const YAML::Exception&) {
      fail(n, field, "expected a number, got '" + n.Scalar() + "'");
    }
  }

  std::size_t count(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a non-negative integer");
    try {
      const auto v = n.as<long long>();
      if (v < 0) fail(n, field, "must be >= 0");
      return static_cast<std::size_t>(v);
    } catch (const YAML::Exception&) {
      // Allow 1e6-style literals when they are integral.
      double d = 0.0;
      try {
        d = n.as<double>();
      } catch (const YAML::Exception&) {
        fail(n, field, "expected a non-negative integer, got '" + n.Scalar() + "'");
      }
      if (!(d >= 0.0) || d != std::floor(d) || d > 9.0e15) fail(n, field, "expected a non-negative integer");
      return static_cast<std::size_t>(d);
    }
  }

  std::uint64_t seed(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected an unsigned integer");
    try {
      return n.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      fail(n, field, "expected an unsigned integer, got '" + n.Scalar() + "'");
    }
  }

  bool boolean(const YAML::Node& n, const std::string& field) const {
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      fail(n, field, "expected true or false");
    }
  }

  std::string text(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a string");
    return n.Scalar();
  }

  // Scalar or list of numbers.
  std::vector<double> numbers(const YAML::Node& n, const std::string& field) const {
    std::vector<double> out;
    if (n.IsSequence()) {
      for (std::size_t i = 0; i < n.size(); ++i) out.push_back(number(n[i], field + "[" + std::to_string(i) + "]"));
      if (out.empty()) fail(n, field, "empty list");
    } else {
      out.push_back(number(n, field));
    }
    return out;
  }

  std::vector<std::size_t> counts(const YAML::Node& n, const std::string& field) const {
    std::vector<std::size_t> out;
    if (n.IsSequence()) {
      for (std::size_t i = 0; i < n.size(); ++i) out.push_back(count(n[i], field + "[" + std::to_string(i) + "]"));
      if (out.empty()) fail(n, field, "empty list");
    } else {
      out.push_back(count(n, field));
    }
    return out;
  }

  ExperimentConfig parse(const YAML::Node& root) const;

 private:
  void parse_problem(const YAML::Node& n, ExperimentConfig& cfg) const;
  ProbInput parse_input(const YAML::Node& n) const;
  void parse_noise(const YAML::Node& n, ExperimentConfig& cfg) const;
  SubsetOptions parse_subset(const YAML::Node& n, const std::string& field, SubsetOptions base) const;
  void parse_gp(const YAML::Node& n, ExperimentConfig& cfg) const;
  void parse_active(const YAML::Node& n, ExperimentConfig& cfg) const;

  std::string source_;
};

void Parser::parse_problem(const YAML::Node& n, ExperimentConfig& cfg) const {
  if (n.IsScalar()) {
    cfg.problem.builtin = n.Scalar();
    try {
      cfg.problem.dim = builtin_problem(cfg.problem.builtin).input.dim();
    } catch (const ConfigError&) {
      fail(n, "problem", "unknown builtin problem '" + cfg.problem.builtin + "' (rs, four_branch, hat)");
    }
    return;
  }
  known_keys(n, "problem", {"external", "dim", "timeout", "startup_timeout"});
  if (!n["external"]) fail(n, "problem.external", "required for an external problem");
  if (!n["dim"]) fail(n, "problem.dim", "required for an external problem");
  ExternalCommand cmd;
  cmd.command = text(n["external"], "problem.external");
  if (cmd.command.empty()) fail(n["external"], "problem.external", "empty command");
  auto seconds = [&](const YAML::Node& s, const std::string& field) {
    const double v = number(s, field);
    if (!(v > 0.0)) fail(s, field, "must be positive");
    return std::chrono::milliseconds(static_cast<long long>(std::llround(v * 1000.0)));
  };
  if (n["timeout"]) cmd.timeout = seconds(n["timeout"], "problem.timeout");
  if (n["startup_timeout"]) cmd.startup_timeout = seconds(n["startup_timeout"], "problem.startup_timeout");
  cfg.problem.external = cmd;
  cfg.problem.dim = count(n["dim"], "problem.dim");
  if (cfg.problem.dim == 0) fail(n["dim"], "problem.dim", "must be positive");
}

ProbInput Parser::parse_input(const YAML::Node& n) const {
  known_keys(n, "input", {"preset", "variables", "correlation"});
  if (n["preset"]) {
    if (n["variables"] || n["correlation"]) fail(n, "input", "preset excludes variables and correlation");
    const std::string name = text(n["preset"], "input.preset");
    if (name == "frame") return frame_input();
    try {
      return builtin_problem(name).input;
    } catch (const ConfigError&) {
      fail(n["preset"], "input.preset", "unknown preset '" + name + "' (rs, four_branch, hat, frame)");
    }
  }
  const YAML::Node vars = n["variables"];
  if (!vars || !vars.IsSequence() || vars.size() == 0) fail(n, "input.variables", "expected a non-empty list");
  std::vector<Marginal> marginals;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const YAML::Node v = vars[i];
    const std::string field = "input.variables[" + std::to_string(i) + "]";
    known_keys(v, field, {"name", "distribution", "mean", "std", "lower", "upper"});
    const std::string name = v["name"] ? text(v["name"], field + ".name") : "x" + std::to_string(i + 1);
    if (!v["distribution"]) fail(v, field + ".distribution", "required");
    if (!v["mean"]) fail(v, field + ".mean", "required");
    if (!v["std"]) fail(v, field + ".std", "required");
    const std::string dist = text(v["distribution"], field + ".distribution");
    const double mean = number(v["mean"], field + ".mean");
    const double sd = number(v["std"], field + ".std");
    try {
      if (dist == "gaussian") {
        marginals.push_back(Marginal::gaussian(mean, sd));
      } else if (dist == "lognormal") {
        marginals.push_back(Marginal::lognormal(mean, sd));
      } else if (dist == "truncated_gaussian") {
        const double lo = v["lower"] ? number(v["lower"], field + ".lower") : -std::numeric_limits<double>::infinity();
        const double hi = v["upper"] ? number(v["upper"], field + ".upper") : std::numeric_limits<double>::infinity();
        marginals.push_back(Marginal::truncated_gaussian(mean, sd, lo, hi));
      } else {
        fail(v["distribution"], field + ".distribution",
             "unknown distribution '" + dist + "' (gaussian, lognormal, truncated_gaussian)");
      }
    } catch (const ConfigError& e) {
      if (std::string(e.what()).starts_with(source_)) throw;
      fail(v, field, e.what());
    }
    names.push_back(name);
  }
  const auto m = static_cast<Eigen::Index>(marginals.size());
  Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(m, m);
  if (const YAML::Node c = n["correlation"]) {
    if (!c.IsSequence()) fail(c, "input.correlation", "expected a list of [name, name, rho] entries");
    for (std::size_t k = 0; k < c.size(); ++k) {
      const YAML::Node e = c[k];
      const std::string field = "input.correlation[" + std::to_string(k) + "]";
      if (!e.IsSequence() || e.size() != 3) fail(e, field, "expected [name, name, rho]");
      auto index_of = [&](const YAML::Node& nn) {
        const std::string s = text(nn, field);
        const auto it = std::find(names.begin(), names.end(), s);
        if (it == names.end()) fail(nn, field, "unknown variable '" + s + "'");
        return static_cast<Eigen::Index>(it - names.begin());
      };
      const Eigen::Index a = index_of(e[0]);
      const Eigen::Index b = index_of(e[1]);
      const double rho = number(e[2], field);
      if (a == b) fail(e, field, "a variable cannot be correlated with itself");
      if (!(rho > -1.0 && rho < 1.0)) fail(e[2], field, "correlation must lie in (-1, 1)");
      corr(a, b) = rho;
      corr(b, a) = rho;
    }
  }
  try {
    return ProbInput(std::move(marginals), corr, names);
  } catch (const ConfigError& e) {
    fail(n, "input", e.what());
  }
}

void Parser::parse_noise(const YAML::Node& n, ExperimentConfig& cfg) const {
  if (n.IsScalar() && n.Scalar() == "none") return;
  known_keys(n, "noise", {"sigma_eps", "variance", "alpha", "samples", "seed"});
  int modes = 0;
  for (const char* key : {"sigma_eps", "variance", "alpha"}) modes += n[key] ? 1 : 0;
  if (modes != 1) fail(n, "noise", "exactly one of sigma_eps, variance or alpha must be given");
  if (n["sigma_eps"]) {
    cfg.noise_mode = NoiseMode::kSigma;
    cfg.noise_values = numbers(n["sigma_eps"], "noise.sigma_eps");
    for (double v : cfg.noise_values) {
      if (v < 0.0) fail(n["sigma_eps"], "noise.sigma_eps", "must be >= 0");
    }
  } else if (n["variance"]) {
    cfg.noise_mode = NoiseMode::kVariance;
    cfg.noise_values = numbers(n["variance"], "noise.variance");
    for (double v : cfg.noise_values) {
      if (v < 0.0) fail(n["variance"], "noise.variance", "must be >= 0");
    }
  } else {
    cfg.noise_mode = NoiseMode::kAlpha;
    cfg.noise_values = numbers(n["alpha"], "noise.alpha");
    for (double v : cfg.noise_values) {
      if (!(v > 0.0 && v < 1.0)) fail(n["alpha"], "noise.alpha", "must lie in (0, 1)");
    }
  }
  if (n["samples"]) {
    if (cfg.noise_mode != NoiseMode::kAlpha) fail(n["samples"], "noise.samples", "only valid with alpha");
    cfg.calibration_samples = count(n["samples"], "noise.samples");
  }
  if (n["seed"]) {
    if (cfg.noise_mode != NoiseMode::kAlpha) fail(n["seed"], "noise.seed", "only valid with alpha");
    cfg.calibration_seed = seed(n["seed"], "noise.seed");
  }
}

SubsetOptions Parser::parse_subset(const YAML::Node& n, const std::string& field, SubsetOptions o) const {
  known_keys(n, field, {"n_per_level", "p0", "max_levels", "proposal_width"});
  if (n["n_per_level"]) o.n_per_level = count(n["n_per_level"], field + ".n_per_level");
  if (n["p0"]) o.p0 = number(n["p0"], field + ".p0");
  if (n["max_levels"]) o.max_levels = count(n["max_levels"], field + ".max_levels");
  if (n["proposal_width"]) o.proposal_width = number(n["proposal_width"], field + ".proposal_width");
  if (o.n_per_level < 1000) fail(n, field + ".n_per_level", "must be at least 1000");
  if (!(o.p0 > 0.0 && o.p0 <= 0.5)) fail(n, field + ".p0", "must lie in (0, 0.5]");
  if (o.max_levels < 1) fail(n, field + ".max_levels", "must be at least 1");
  if (!(o.proposal_width > 0.0)) fail(n, field + ".proposal_width", "must be positive");
  return o;
}

void Parser::parse_gp(const YAML::Node& n, ExperimentConfig& cfg) const {
  known_keys(n, "gp", {"starts", "theta_min", "theta_max", "tau_min", "tau_max", "tau", "ml_subset", "max_evals"});
  FitOptions& g = cfg.gp;
  if (n["starts"]) g.n_starts = count(n["starts"], "gp.starts");
  if (n["theta_min"]) g.theta_min = number(n["theta_min"], "gp.theta_min");
  if (n["theta_max"]) g.theta_max = number(n["theta_max"], "gp.theta_max");
  if (n["tau_min"]) g.tau_min = number(n["tau_min"], "gp.tau_min");
  if (n["tau_max"]) g.tau_max = number(n["tau_max"], "gp.tau_max");
  if (n["tau"]) {
    const YAML::Node t = n["tau"];
    if (!(t.IsScalar() && t.Scalar() == "learn")) {
      const double v = number(t, "gp.tau");
      if (!(v >= 0.0 && v < 1.0)) fail(t, "gp.tau", "must be 'learn' or a value in [0, 1)");
      g.fixed_tau = v;
    }
  }
  if (n["ml_subset"]) g.ml_subset = count(n["ml_subset"], "gp.ml_subset");
  if (n["max_evals"]) g.optimizer.max_evals = count(n["max_evals"], "gp.max_evals");
  if (g.n_starts < 1) fail(n, "gp.starts", "must be at least 1");
  if (!(g.theta_min > 0.0 && g.theta_min < g.theta_max)) fail(n, "gp.theta_min", "need 0 < theta_min < theta_max");
  if (!(g.tau_min > 0.0 && g.tau_min < g.tau_max && g.tau_max < 1.0)) {
    fail(n, "gp.tau_min", "need 0 < tau_min < tau_max < 1");
  }
}

void Parser::parse_active(const YAML::Node& n, ExperimentConfig& cfg) const {
  known_keys(n, "active", {"n_ini", "batch_size", "budget", "max_candidates", "reduction", "full_refit_every",
                           "training_retries", "scoring_noise", "duplicate_tol", "early_stop", "final_subset"});
  ActiveConfig& a = cfg.active;
  if (n["n_ini"]) a.n_ini = count(n["n_ini"], "active.n_ini");
  if (n["batch_size"]) cfg.batch_sizes = counts(n["batch_size"], "active.batch_size");
  if (n["budget"]) a.budget = count(n["budget"], "active.budget");
  if (n["max_candidates"]) a.max_candidates = count(n["max_candidates"], "active.max_candidates");
  if (n["reduction"]) a.reduction = number(n["reduction"], "active.reduction");
  if (n["full_refit_every"]) a.full_refit_every = count(n["full_refit_every"], "active.full_refit_every");
  if (n["training_retries"]) a.training_retries = count(n["training_retries"], "active.training_retries");
  if (n["duplicate_tol"]) a.duplicate_tol = number(n["duplicate_tol"], "active.duplicate_tol");
  if (n["scoring_noise"]) {
    const std::string s = text(n["scoring_noise"], "active.scoring_noise");
    if (s == "known") {
      cfg.scoring_known_noise = true;
    } else if (s != "learned") {
      fail(n["scoring_noise"], "active.scoring_noise", "must be 'learned' or 'known'");
    }
  }
  if (const YAML::Node e = n["early_stop"]) {
    if (e.IsScalar()) {
      a.early_stop = boolean(e, "active.early_stop");
    } else {
      known_keys(e, "active.early_stop", {"enabled", "tol", "window"});
      a.early_stop = e["enabled"] ? boolean(e["enabled"], "active.early_stop.enabled") : true;
      if (e["tol"]) a.early_stop_tol = number(e["tol"], "active.early_stop.tol");
      if (e["window"]) a.early_stop_window = count(e["window"], "active.early_stop.window");
    }
  }
  if (n["final_subset"]) a.final_reliability = parse_subset(n["final_subset"], "active.final_subset", cfg.subset);
  if (a.n_ini < 2) fail(n, "active.n_ini", "must be at least 2");
  if (a.max_candidates < 1) fail(n, "active.max_candidates", "must be positive");
  if (!(a.reduction >= 0.0 && a.reduction <= 1.0)) fail(n, "active.reduction", "must lie in [0, 1]");
  for (std::size_t k : cfg.batch_sizes) {
    if (k < 1) fail(n["batch_size"], "active.batch_size", "must be at least 1");
    if (a.budget > 0 && a.budget < k) fail(n, "active.budget", "must be 0 or at least the batch size");
  }
}

ExperimentConfig Parser::parse(const YAML::Node& root) const {
  if (!root.IsMap()) fail(root, "<root>", "expected a mapping");
  known_keys(root, "", {"name", "output", "problem", "gamma", "input", "reference_pf", "noise", "method",
                        "replications", "seed", "seeds", "workers", "mcs", "subset", "gp", "denoise", "active"});
  ExperimentConfig cfg;
  if (!root["name"]) fail(root, "name", "required");
  cfg.name = text(root["name"], "name");
  if (cfg.name.empty() || cfg.name.find('/') != std::string::npos) fail(root["name"], "name", "must be a plain non-empty name");
  cfg.output_dir = root["output"] ? text(root["output"], "output") : "runs/" + cfg.name;

  if (!root["problem"]) fail(root, "problem", "required");
  parse_problem(root["problem"], cfg);
  if (root["gamma"]) {
    if (cfg.problem.builtin != "rs") fail(root["gamma"], "gamma", "only valid for the rs problem");
    cfg.problem.gamma = number(root["gamma"], "gamma");
    if (!(cfg.problem.gamma > 0.0)) fail(root["gamma"], "gamma", "must be positive");
  }
  if (root["input"]) {
    cfg.input = parse_input(root["input"]);
  } else if (!cfg.problem.builtin.empty()) {
    cfg.input = builtin_problem(cfg.problem.builtin).input;
  } else {
    fail(root, "input", "required for an external problem");
  }
  if (cfg.input->dim() != cfg.problem.dim) {
    fail(root["input"] ? root["input"] : root, "input", "dimension " + std::to_string(cfg.input->dim()) +
                                                            " does not match the problem dimension " +
                                                            std::to_string(cfg.problem.dim));
  }
  if (root["reference_pf"]) {
    cfg.reference_pf = number(root["reference_pf"], "reference_pf");
    if (!(*cfg.reference_pf > 0.0 && *cfg.reference_pf < 1.0)) fail(root["reference_pf"], "reference_pf", "must lie in (0, 1)");
  } else if (!cfg.problem.builtin.empty() && !root["input"] && cfg.problem.gamma == 1.0) {
    cfg.reference_pf = builtin_problem(cfg.problem.builtin).reference_pf;
  }

  if (root["noise"]) parse_noise(root["noise"], cfg);

  if (!root["method"]) fail(root, "method", "required");
  const std::string method = text(root["method"], "method");
  if (method == "mcs") {
    cfg.method = Method::kMcs;
  } else if (method == "subset") {
    cfg.method = Method::kSubset;
  } else if (method == "denoise") {
    cfg.method = Method::kDenoise;
  } else if (method == "active") {
    cfg.method = Method::kActive;
  } else {
    fail(root["method"], "method", "unknown method '" + method + "' (mcs, subset, denoise, active)");
  }

  if (root["replications"]) cfg.replications = count(root["replications"], "replications");
  if (cfg.replications < 1) fail(root["replications"], "replications", "must be at least 1");
  if (root["seed"]) cfg.base_seed = seed(root["seed"], "seed");
  if (const YAML::Node s = root["seeds"]) {
    if (root["seed"]) fail(s, "seeds", "give either seed or seeds, not both");
    if (!s.IsSequence()) fail(s, "seeds", "expected a list");
    for (std::size_t i = 0; i < s.size(); ++i) cfg.seeds.push_back(seed(s[i], "seeds[" + std::to_string(i) + "]"));
    if (cfg.seeds.size() != cfg.replications) {
      fail(s, "seeds", "length " + std::to_string(cfg.seeds.size()) + " differs from replications (" +
                           std::to_string(cfg.replications) + ")");
    }
  }
  if (cfg.noise_mode == NoiseMode::kAlpha && !(root["noise"]["seed"])) cfg.calibration_seed = cfg.base_seed;
  if (root["workers"]) {
    cfg.workers = count(root["workers"], "workers");
    if (*cfg.workers < 1) fail(root["workers"], "workers", "must be at least 1");
  }

  if (const YAML::Node m = root["mcs"]) {
    known_keys(m, "mcs", {"n", "target_cov", "max_n", "block"});
    if (m["n"]) cfg.mcs.n = count(m["n"], "mcs.n");
    if (m["target_cov"]) cfg.mcs.target_cov = number(m["target_cov"], "mcs.target_cov");
    if (m["max_n"]) cfg.mcs.max_n = count(m["max_n"], "mcs.max_n");
    if (m["block"]) cfg.mcs.block = count(m["block"], "mcs.block");
    if (cfg.mcs.target_cov && !(*cfg.mcs.target_cov > 0.0 && *cfg.mcs.target_cov < 1.0)) {
      fail(m["target_cov"], "mcs.target_cov", "must lie in (0, 1)");
    }
    if (!cfg.mcs.target_cov && cfg.mcs.n < 1000) fail(m, "mcs.n", "must be at least 1000");
    if (cfg.mcs.block < 1 || cfg.mcs.max_n < 1) fail(m, "mcs", "block and max_n must be positive");
  }
  if (root["subset"]) cfg.subset = parse_subset(root["subset"], "subset", cfg.subset);
  cfg.active.reliability = cfg.subset;
  if (root["gp"]) parse_gp(root["gp"], cfg);

  if (const YAML::Node d = root["denoise"]) {
    if (cfg.method != Method::kDenoise) fail(d, "denoise", "only valid with method: denoise");
    known_keys(d, "denoise", {"design_sizes", "estimator"});
    if (d["design_sizes"]) cfg.design_sizes = counts(d["design_sizes"], "denoise.design_sizes");
    if (d["estimator"]) {
      cfg.denoise_estimator = text(d["estimator"], "denoise.estimator");
      if (cfg.denoise_estimator != "mcs" && cfg.denoise_estimator != "subset") {
        fail(d["estimator"], "denoise.estimator", "must be 'mcs' or 'subset'");
      }
    }
    for (std::size_t n : cfg.design_sizes) {
      if (n < 2) fail(d["design_sizes"], "denoise.design_sizes", "each size must be at least 2");
    }
  }
  if (cfg.method == Method::kDenoise && cfg.design_sizes.empty()) fail(root, "denoise.design_sizes", "required");
  if (const YAML::Node a = root["active"]) {
    if (cfg.method != Method::kActive) fail(a, "active", "only valid with method: active");
    parse_active(a, cfg);
  }
  cfg.active.fit = cfg.gp;
  if (cfg.scoring_known_noise && cfg.noise_mode == NoiseMode::kNone) {
    fail(root["active"], "active.scoring_noise", "'known' requires a noise specification");
  }
  return cfg;
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::kMcs: return "mcs";
    case Method::kSubset: return "subset";
    case Method::kDenoise: return "denoise";
    case Method::kActive: return "active";
  }
  return "?";
}

const char* to_string(NoiseMode m) {
  switch (m) {
    case NoiseMode::kNone: return "none";
    case NoiseMode::kSigma: return "sigma_eps";
    case NoiseMode::kVariance: return "variance";
    case NoiseMode::kAlpha: return "alpha";
  }
  return "?";
}

std::uint64_t ExperimentConfig::seed_of(std::size_t replication) const {
  return seeds.empty() ? expand_seed(base_seed, replication) : seeds.at(replication);
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ":" << e.mark.line + 1 << ": syntax error: " << e.msg;
    throw ConfigError(os.str());
  }
  return Parser(source).parse(root);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace relide
