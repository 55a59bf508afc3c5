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

#include "relide/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "relide/error.hpp"
#include "relide/problems.hpp"

namespace relide {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string token(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(num(v(i)));
  return out;
}

json box_json(const BoxStats& b) {
  return json{{"min", num(b.min)}, {"q1", num(b.q1)},   {"median", num(b.median)},
              {"q3", num(b.q3)},   {"max", num(b.max)}, {"iqr", num(b.iqr())}};
}

json subset_json(const SubsetOptions& o) {
  return json{{"n_per_level", o.n_per_level}, {"p0", o.p0}, {"max_levels", o.max_levels},
              {"proposal_width", o.proposal_width}};
}

json input_json(const ProbInput& input) {
  json vars = json::array();
  for (std::size_t i = 0; i < input.dim(); ++i) {
    vars.push_back(json{{"name", input.names().at(i)}, {"distribution", input.marginal(i).describe()}});
  }
  return json{{"variables", vars}, {"independent", input.independent()}, {"correlation", matrix_json(input.correlation())}};
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  if (cfg.problem.external) {
    j["problem"] = json{{"external", cfg.problem.external->command},
                        {"dim", cfg.problem.dim},
                        {"timeout", cfg.problem.external->timeout.count() / 1000.0}};
  } else {
    j["problem"] = cfg.problem.builtin;
    if (cfg.problem.builtin == "rs") j["gamma"] = cfg.problem.gamma;
  }
  j["input"] = input_json(*cfg.input);
  j["reference_pf"] = cfg.reference_pf ? json(*cfg.reference_pf) : json(nullptr);
  j["noise"] = json{{"mode", to_string(cfg.noise_mode)}, {"values", cfg.noise_values}};
  if (cfg.noise_mode == NoiseMode::kAlpha) {
    j["noise"]["samples"] = cfg.calibration_samples;
    j["noise"]["seed"] = cfg.calibration_seed;
  }
  j["method"] = to_string(cfg.method);
  j["replications"] = cfg.replications;
  j["seed"] = cfg.base_seed;
  if (!cfg.seeds.empty()) j["seeds"] = cfg.seeds;
  switch (cfg.method) {
    case Method::kMcs:
      j["mcs"] = json{{"n", cfg.mcs.n},
                      {"target_cov", cfg.mcs.target_cov ? json(*cfg.mcs.target_cov) : json(nullptr)},
                      {"max_n", cfg.mcs.max_n},
                      {"block", cfg.mcs.block}};
      break;
    case Method::kSubset:
      j["subset"] = subset_json(cfg.subset);
      break;
    case Method::kDenoise:
    case Method::kActive: {
      const FitOptions& g = cfg.gp;
      j["gp"] = json{{"starts", g.n_starts},
                     {"theta_min", g.theta_min},
                     {"theta_max", g.theta_max},
                     {"tau_min", g.tau_min},
                     {"tau_max", g.tau_max},
                     {"tau", g.fixed_tau ? json(*g.fixed_tau) : json("learn")},
                     {"ml_subset", g.ml_subset},
                     {"max_evals", g.optimizer.max_evals}};
      if (cfg.method == Method::kDenoise) {
        j["denoise"] = json{{"design_sizes", cfg.design_sizes}, {"estimator", cfg.denoise_estimator}};
        if (cfg.denoise_estimator == "mcs") {
          j["mcs"] = json{{"n", cfg.mcs.n}};
        } else {
          j["subset"] = subset_json(cfg.subset);
        }
      } else {
        const ActiveConfig& a = cfg.active;
        j["subset"] = subset_json(cfg.subset);
        j["active"] = json{{"n_ini", a.n_ini},
                           {"batch_size", cfg.batch_sizes},
                           {"budget", a.budget},
                           {"max_candidates", a.max_candidates},
                           {"reduction", a.reduction},
                           {"full_refit_every", a.full_refit_every},
                           {"training_retries", a.training_retries},
                           {"scoring_noise", cfg.scoring_known_noise ? "known" : "learned"},
                           {"duplicate_tol", a.duplicate_tol},
                           {"early_stop", json{{"enabled", a.early_stop},
                                               {"tol", a.early_stop_tol},
                                               {"window", a.early_stop_window}}},
                           {"final_subset", a.final_reliability ? subset_json(*a.final_reliability) : json(nullptr)}};
      }
      break;
    }
  }
  return j;
}

struct CaseSpec {
  std::string name;
  std::optional<double> noise_value;
  double sigma_eps = 0.0;
  std::size_t design_size = 0;
  std::size_t batch_size = 0;
};

std::vector<CaseSpec> enumerate_cases(const ExperimentConfig& cfg, const std::vector<NoiseCalibration>& calib) {
  std::vector<CaseSpec> noise_cases;
  if (cfg.noise_mode == NoiseMode::kNone) {
    noise_cases.push_back(CaseSpec{"noise-free", std::nullopt, 0.0, 0, 0});
  } else {
    for (std::size_t i = 0; i < cfg.noise_values.size(); ++i) {
      const double v = cfg.noise_values[i];
      CaseSpec c;
      c.noise_value = v;
      switch (cfg.noise_mode) {
        case NoiseMode::kSigma:
          c.name = "sigma-" + token(v);
          c.sigma_eps = v;
          break;
        case NoiseMode::kVariance:
          c.name = "var-" + token(v);
          c.sigma_eps = std::sqrt(v);
          break;
        case NoiseMode::kAlpha:
          c.name = "alpha-" + token(v);
          c.sigma_eps = calib.at(i).result.sigma_eps;
          break;
        case NoiseMode::kNone:
          break;
      }
      noise_cases.push_back(c);
    }
  }
  std::vector<CaseSpec> out;
  for (const CaseSpec& base : noise_cases) {
    if (cfg.method == Method::kDenoise) {
      for (std::size_t n : cfg.design_sizes) {
        CaseSpec c = base;
        c.design_size = n;
        c.name += "_N-" + std::to_string(n);
        out.push_back(c);
      }
    } else if (cfg.method == Method::kActive) {
      for (std::size_t k : cfg.batch_sizes) {
        CaseSpec c = base;
        c.batch_size = k;
        c.name += "_K-" + std::to_string(k);
        out.push_back(c);
      }
    } else {
      out.push_back(base);
    }
  }
  return out;
}

LimitState make_base(const ExperimentConfig& cfg) {
  if (cfg.problem.external) return external_model(*cfg.problem.external, cfg.problem.dim, "external");
  return builtin_limit_state(cfg.problem.builtin, cfg.problem.gamma);
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const SubsetLevelError*>(&e)) return "SubsetLevelError";
  if (dynamic_cast<const EvaluationError*>(&e)) return "EvaluationError";
  if (dynamic_cast<const TrainingError*>(&e)) return "TrainingError";
  if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
  if (dynamic_cast<const CalibrationError*>(&e)) return "CalibrationError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  return "Error";
}

HistoryRow single_row(const RelResult& r, std::size_t n, std::size_t evals, double seconds) {
  HistoryRow row;
  row.iteration = 0;
  row.n = n;
  row.pf = r.pf;
  row.beta = r.beta;
  row.cov = r.cov;
  row.evals = evals;
  row.seconds = seconds;
  return row;
}

ReplicationOutcome run_replication(const ExperimentConfig& cfg, const CaseSpec& cs, std::size_t r) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  ReplicationOutcome out;
  out.replication = r;
  out.seed = cfg.seed_of(r);
  const RandomStream root(out.seed);
  const ProbInput& input = *cfg.input;
  std::optional<LimitState> model;
  try {
    LimitState base = make_base(cfg);
    model.emplace(corrupt(base, cs.sigma_eps, root.substream(11)));
    RandomStream estimator_rng = root.substream(12);
    switch (cfg.method) {
      case Method::kMcs:
        out.result = mcs(*model, input, cfg.mcs, estimator_rng);
        out.history.push_back(single_row(out.result, 0, model->eval_count(), elapsed()));
        break;
      case Method::kSubset: {
        SubsetOptions so = cfg.subset;
        so.retain_samples = false;
        out.result = subset(*model, input, so, estimator_rng);
        out.history.push_back(single_row(out.result, 0, model->eval_count(), elapsed()));
        break;
      }
      case Method::kDenoise: {
        RandomStream design_rng = root.substream(13);
        out.physical = lhs_design(input, cs.design_size, design_rng);
        out.standard = input.to_standard(out.physical);
        out.y = model->evaluate_rows(out.physical);
        FitOptions fo = cfg.gp;
        fo.seed = root.substream(14).key();
        const GpModel gp = fit(Design::make(out.standard, out.y), fo);
        out.hyper = gp.hyper();
        out.sigma2_total = gp.sigma2_total();
        const BatchFunction mean = [&gp](const PointMatrix& u) { return gp.predict_mean(u); };
        if (cfg.denoise_estimator == "mcs") {
          out.result = mcs(mean, input.dim(), cfg.mcs, estimator_rng);
        } else {
          SubsetOptions so = cfg.subset;
          so.retain_samples = false;
          out.result = subset(mean, input.dim(), so, estimator_rng);
        }
        out.history.push_back(single_row(out.result, cs.design_size, model->eval_count(), elapsed()));
        break;
      }
      case Method::kActive: {
        ActiveConfig a = cfg.active;
        a.batch_size = cs.batch_size;
        a.seed = root.substream(15).key();
        if (cfg.scoring_known_noise) a.scoring_noise_variance = cs.sigma_eps * cs.sigma_eps;
        LoopState st = run(*model, input, a);
        out.history = st.history;
        out.standard = st.design.points;
        out.physical = st.physical;
        out.y = st.design.y;
        if (st.model) {
          out.hyper = st.model->hyper();
          out.sigma2_total = st.model->sigma2_total();
        }
        out.duplicates = st.duplicates;
        out.short_batches = st.short_batches;
        out.training_retries = st.training_retries;
        out.early_stopped = st.early_stopped;
        if (st.aborted) {
          out.error_type = "TrainingError";
          out.error = st.abort_reason;
          if (!st.history.empty()) {
            const HistoryRow& last = st.history.back();
            out.result.pf = last.pf;
            out.result.beta = last.beta;
            out.result.cov = last.cov;
          }
        } else {
          out.result = std::move(st.final_result);
          out.result.samples.resize(0, 0);
          out.result.sample_values.resize(0);
        }
        break;
      }
    }
    out.ok = out.error.empty();
  } catch (const SubsetLevelError& e) {
    out.error_type = error_type(e);
    out.error = e.what();
    out.result = e.partial();
    out.result.samples.resize(0, 0);
    out.result.sample_values.resize(0);
  } catch (const std::exception& e) {
    out.error_type = error_type(e);
    out.error = e.what();
  }
  if (model) out.evals = model->eval_count();
  out.seconds = elapsed();
  return out;
}

json run_record(const ExperimentConfig& cfg, const CaseSpec& cs, const ReplicationOutcome& o) {
  json j;
  j["case"] = cs.name;
  j["replication"] = o.replication;
  j["seed"] = o.seed;
  j["status"] = o.ok ? "ok" : "failed";
  if (!o.ok) j["error"] = json{{"type", o.error_type}, {"message", o.error}};
  j["config"] = config_json(cfg);
  j["case_parameters"] = json{{"noise_value", cs.noise_value ? json(*cs.noise_value) : json(nullptr)},
                              {"sigma_eps", cs.sigma_eps},
                              {"design_size", cs.design_size},
                              {"batch_size", cs.batch_size}};
  j["result"] = json{{"pf", num(o.result.pf)},
                     {"beta", num(o.result.beta)},
                     {"cov", num(o.result.cov)},
                     {"n_evals", o.result.n_evals},
                     {"no_failures", o.result.no_failures},
                     {"pf_upper_bound", num(o.result.pf_upper_bound)}};
  if (!o.result.thresholds.empty()) {
    json t = json::array();
    for (double v : o.result.thresholds) t.push_back(num(v));
    j["result"]["thresholds"] = t;
  }
  json hist = json::array();
  for (const HistoryRow& h : o.history) {
    hist.push_back(json{{"iteration", h.iteration},
                        {"N", h.n},
                        {"pf", num(h.pf)},
                        {"beta", num(h.beta)},
                        {"cov", num(h.cov)},
                        {"evals", h.evals},
                        {"seconds", h.seconds}});
  }
  j["history"] = hist;
  if (o.physical.rows() > 0) {
    j["design"] = json{{"physical", matrix_json(o.physical)}, {"standard", matrix_json(o.standard)}, {"y", vector_json(o.y)}};
  }
  if (o.hyper) {
    json theta = json::array();
    for (Eigen::Index i = 0; i < o.hyper->theta.size(); ++i) theta.push_back(o.hyper->theta(i));
    j["gp"] = json{{"theta", theta}, {"tau", o.hyper->tau}, {"sigma2_total", o.sigma2_total}};
  }
  j["evals"] = o.evals;
  if (cfg.method == Method::kActive) {
    j["loop"] = json{{"duplicates", o.duplicates},
                     {"short_batches", o.short_batches},
                     {"training_retries", o.training_retries},
                     {"early_stopped", o.early_stopped}};
  }
  j["wall_time"] = o.seconds;
  return j;
}

std::string results_csv(const CaseOutcome& c) {
  std::ostringstream os;
  os << "replication,iteration,N,pf,beta,cov,evals,seconds\n";
  for (const ReplicationOutcome& o : c.replications) {
    for (const HistoryRow& h : o.history) {
      os << o.replication << ',' << h.iteration << ',' << h.n << ',' << csv_number(h.pf) << ',' << csv_number(h.beta)
         << ',' << csv_number(h.cov) << ',' << h.evals << ',' << csv_number(h.seconds) << '\n';
    }
  }
  return os.str();
}

json summary_json(const ExperimentConfig& cfg, const CaseSpec& cs, const CaseOutcome& c) {
  json j;
  j["case"] = cs.name;
  j["method"] = to_string(cfg.method);
  j["problem"] = cfg.problem.external ? "external" : cfg.problem.builtin;
  j["noise"] = json{{"mode", to_string(cfg.noise_mode)},
                    {"value", cs.noise_value ? json(*cs.noise_value) : json(nullptr)},
                    {"sigma_eps", cs.sigma_eps}};
  j["design_size"] = cs.design_size;
  j["batch_size"] = cs.batch_size;
  j["reference_pf"] = cfg.reference_pf ? json(*cfg.reference_pf) : json(nullptr);
  j["replications"] = c.replications.size();
  j["succeeded"] = c.succeeded();
  j["failed"] = c.replications.size() - c.succeeded();
  if (c.succeeded() > 0) {
    j["pf"] = box_json(c.pf_stats());
    j["beta"] = box_json(c.beta_stats());
    j["evals"] = box_json(c.evals_stats());
  } else {
    j["pf"] = nullptr;
    j["beta"] = nullptr;
    j["evals"] = nullptr;
  }
  return j;
}

std::string rep_file(std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "rep_%03zu.json", r);
  return buf;
}

}  // namespace

std::size_t CaseOutcome::succeeded() const {
  std::size_t n = 0;
  for (const auto& r : replications) n += r.ok ? 1 : 0;
  return n;
}

namespace {

BoxStats stats_of(const CaseOutcome& c, double (*field)(const ReplicationOutcome&)) {
  std::vector<double> v;
  for (const auto& r : c.replications) {
    if (r.ok) v.push_back(field(r));
  }
  if (v.empty()) throw Error("case " + c.name + ": no successful replication");
  return box_stats(v);
}

}  // namespace

BoxStats CaseOutcome::pf_stats() const {
  return stats_of(*this, [](const ReplicationOutcome& r) { return r.result.pf; });
}
BoxStats CaseOutcome::beta_stats() const {
  return stats_of(*this, [](const ReplicationOutcome& r) { return r.result.beta; });
}
BoxStats CaseOutcome::evals_stats() const {
  return stats_of(*this, [](const ReplicationOutcome& r) { return static_cast<double>(r.evals); });
}

std::size_t resolve_workers(const ExperimentConfig& cfg, std::optional<std::size_t> explicit_workers) {
  if (explicit_workers && *explicit_workers > 0) return *explicit_workers;
  if (const char* env = std::getenv("RELIDE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError(std::string("RELIDE_WORKERS: invalid value '") + env + "'");
    return static_cast<std::size_t>(v);
  }
  if (cfg.workers) return *cfg.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<NoiseCalibration> calibrate(const ExperimentConfig& cfg) {
  if (cfg.noise_mode != NoiseMode::kAlpha) throw ConfigError("calibrate: the config does not specify noise.alpha");
  std::vector<NoiseCalibration> out;
  LimitState base = make_base(cfg);
  for (double alpha : cfg.noise_values) {
    RandomStream rng(cfg.calibration_seed);
    out.push_back(NoiseCalibration{alpha, calibrate_noise_detailed(base, *cfg.input, alpha, cfg.calibration_samples, rng)});
  }
  return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (!cfg.input) throw ConfigError("experiment has no input model");
  std::vector<NoiseCalibration> calib;
  if (cfg.noise_mode == NoiseMode::kAlpha) calib = calibrate(cfg);
  const std::vector<CaseSpec> specs = enumerate_cases(cfg, calib);

  ExperimentOutcome result;
  result.output_dir = opts.output_dir.value_or(cfg.output_dir);
  const fs::path root(result.output_dir);
  if (opts.write_files) {
    for (const CaseSpec& cs : specs) fs::create_directories(root / cs.name / "runs");
  }
  for (const CaseSpec& cs : specs) {
    CaseOutcome c;
    c.name = cs.name;
    c.sigma_eps = cs.sigma_eps;
    c.noise_value = cs.noise_value;
    c.design_size = cs.design_size;
    c.batch_size = cs.batch_size;
    c.replications.resize(cfg.replications);
    result.cases.push_back(std::move(c));
  }

  const std::size_t tasks = specs.size() * cfg.replications;
  const std::size_t workers = std::min(resolve_workers(cfg, opts.workers), tasks);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  std::exception_ptr io_error;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      const std::size_t ci = t / cfg.replications;
      const std::size_t r = t % cfg.replications;
      ReplicationOutcome o = run_replication(cfg, specs[ci], r);
      try {
        if (opts.write_files) {
          write_atomic(root / specs[ci].name / "runs" / rep_file(r), run_record(cfg, specs[ci], o).dump(1) + "\n");
        }
      } catch (...) {
        std::lock_guard lock(log_mutex);
        if (!io_error) io_error = std::current_exception();
      }
      if (opts.log) {
        std::lock_guard lock(log_mutex);
        *opts.log << "[" << specs[ci].name << "] replication " << r + 1 << "/" << cfg.replications;
        if (o.ok) {
          *opts.log << " pf=" << o.result.pf << " beta=" << o.result.beta << " evals=" << o.evals;
        } else {
          *opts.log << " FAILED (" << o.error_type << "): " << o.error;
        }
        *opts.log << " (" << std::fixed << std::setprecision(1) << o.seconds << " s)" << std::defaultfloat
                  << std::setprecision(6) << std::endl;
      }
      result.cases[ci].replications[r] = std::move(o);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (io_error) std::rethrow_exception(io_error);

  json failures = json::array();
  for (std::size_t ci = 0; ci < specs.size(); ++ci) {
    for (const ReplicationOutcome& o : result.cases[ci].replications) {
      if (o.ok) continue;
      ++result.failures;
      failures.push_back(json{{"case", specs[ci].name},
                              {"replication", o.replication},
                              {"seed", o.seed},
                              {"type", o.error_type},
                              {"message", o.error}});
    }
  }
  if (!opts.write_files) return result;

  json cases = json::array();
  for (std::size_t ci = 0; ci < specs.size(); ++ci) {
    const fs::path dir = root / specs[ci].name;
    write_atomic(dir / "results.csv", results_csv(result.cases[ci]));
    write_atomic(dir / "summary.json", summary_json(cfg, specs[ci], result.cases[ci]).dump(1) + "\n");
    cases.push_back(specs[ci].name);
  }
  json calib_json = json::array();
  for (const auto& c : calib) {
    calib_json.push_back(json{{"alpha", c.alpha},
                              {"sigma_eps", c.result.sigma_eps},
                              {"q_alpha", c.result.q_alpha},
                              {"roi_count", c.result.roi_count}});
  }
  json manifest;
  manifest["name"] = cfg.name;
  manifest["cases"] = cases;
  manifest["replications"] = cfg.replications;
  manifest["failures"] = result.failures;
  if (!calib.empty()) manifest["calibration"] = calib_json;
  manifest["config"] = config_json(cfg);
  write_atomic(root / "failures.json", failures.dump(1) + "\n");
  write_atomic(root / "manifest.json", manifest.dump(1) + "\n");
  return result;
}

void report(const std::string& run_dir, std::ostream& out) {
  const fs::path root(run_dir);
  auto read = [](const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw Error("cannot read " + p.string());
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw Error(p.string() + ": " + e.what());
    }
  };
  const json manifest = read(root / "manifest.json");
  auto cell = [](const json& j, const char* group, const char* key) -> std::string {
    if (!j.contains(group) || j[group].is_null() || j[group][key].is_null()) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", j[group][key].get<double>());
    return buf;
  };
  out << "experiment " << manifest["name"].get<std::string>() << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %5s %5s %12s %12s %12s %12s %12s %12s\n", "case", "reps", "ok", "median_pf",
                "q1_pf", "q3_pf", "median_beta", "iqr_beta", "median_evals");
  out << line;
  for (const auto& name : manifest["cases"]) {
    const json s = read(root / name.get<std::string>() / "summary.json");
    std::snprintf(line, sizeof line, "%-28s %5zu %5zu %12s %12s %12s %12s %12s %12s\n",
                  name.get<std::string>().c_str(), s["replications"].get<std::size_t>(),
                  s["succeeded"].get<std::size_t>(), cell(s, "pf", "median").c_str(), cell(s, "pf", "q1").c_str(),
                  cell(s, "pf", "q3").c_str(), cell(s, "beta", "median").c_str(), cell(s, "beta", "iqr").c_str(),
                  cell(s, "evals", "median").c_str());
    out << line;
  }
}

}  // namespace relide
