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

#include "relide/active.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "relide/error.hpp"
#include "relide/kmeans.hpp"
#include "relide/stats.hpp"

namespace relide {

namespace {

constexpr Eigen::Index kScoreChunk = 256;

PointMatrix gather_rows(const PointMatrix& m, std::span<const std::size_t> idx) {
  PointMatrix out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(idx[i]));
  return out;
}

// Rows of m without repeats (first occurrences, original order).
std::vector<std::size_t> distinct_rows(const PointMatrix& m) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(m.rows()));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto row_less = [&](std::size_t a, std::size_t b) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double x = m(static_cast<Eigen::Index>(a), c);
      const double y = m(static_cast<Eigen::Index>(b), c);
      if (x != y) return x < y;
    }
    return a < b;
  };
  std::sort(idx.begin(), idx.end(), row_less);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0 && m.row(static_cast<Eigen::Index>(idx[i])) == m.row(static_cast<Eigen::Index>(idx[i - 1]))) continue;
    out.push_back(idx[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Distinct rows, uniformly subsampled without replacement to at most cap.
PointMatrix candidate_rows(const PointMatrix& m, std::size_t cap, RandomStream& rng) {
  std::vector<std::size_t> idx = distinct_rows(m);
  if (idx.size() > cap) {
    for (std::size_t i = 0; i < cap; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
  }
  return gather_rows(m, idx);
}

std::size_t argmax_un(std::span<const LearnScore> scores, std::span<const std::size_t> among) {
  std::size_t best = among.front();
  for (std::size_t i : among) {
    if (scores[i].un > scores[best].un || (scores[i].un == scores[best].un && i < best)) best = i;
  }
  return best;
}

bool beta_stable(const std::vector<HistoryRow>& history, double tol, std::size_t window) {
  if (window == 0 || history.size() <= window) return false;
  const double last = history.back().beta;
  if (!std::isfinite(last)) return false;
  for (std::size_t j = 1; j <= window; ++j) {
    const double prev = history[history.size() - 1 - j].beta;
    if (!std::isfinite(prev) || std::abs(last - prev) >= tol) return false;
  }
  return true;
}

}  // namespace

double pm(const Prediction& p) {
  if (!(p.variance > 0.0)) return p.mean == 0.0 ? 0.5 : 0.0;
  return normal_cdf(-std::abs(p.mean) / std::sqrt(p.variance));
}

double lookahead_var(double sigma2_g, double sigma2_n) {
  if (sigma2_g < 0.0 || sigma2_n < 0.0) throw ConfigError("lookahead_var: variances must be >= 0");
  const double sum = sigma2_g + sigma2_n;
  return sum > 0.0 ? sigma2_g * sigma2_n / sum : 0.0;
}

LearnScore un_score(const Prediction& p, double sigma2_n, std::size_t index) {
  LearnScore s;
  s.index = index;
  s.pm = pm(p);
  if (!(sigma2_n > 0.0)) {
    s.un = s.pm;
    return s;
  }
  if (p.mean == 0.0) return s;
  const double next = lookahead_var(std::max(p.variance, 0.0), sigma2_n);
  const double pm_next = next > 0.0 ? normal_cdf(-std::abs(p.mean) / std::sqrt(next)) : 0.0;
  s.un = std::clamp(s.pm - pm_next, 0.0, s.pm);
  return s;
}

std::vector<LearnScore> score_candidates(const GpModel& model, const PointMatrix& candidates, double sigma2_n,
                                         double cutoff) {
  const Eigen::Index n = candidates.rows();
  std::vector<LearnScore> scores(static_cast<std::size_t>(n));
  if (n == 0) return scores;

  auto score_block = [&](std::span<const std::size_t> idx) {
    const PredictionBatch pb = model.predict_batch(gather_rows(candidates, idx));
    double best = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      scores[idx[i]] = un_score(Prediction{pb.mean(r), pb.variance(r)}, sigma2_n, idx[i]);
      best = std::max(best, scores[idx[i]].un);
    }
    return best;
  };

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!(cutoff > 0.0)) {
    for (std::size_t begin = 0; begin < order.size(); begin += kScoreChunk) {
      const std::size_t len = std::min<std::size_t>(kScoreChunk, order.size() - begin);
      score_block(std::span<const std::size_t>(order).subspan(begin, len));
    }
    return scores;
  }

  const PredictionBatch screen = model.predict_screen(candidates);
  std::vector<double> bound(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double b = pm(Prediction{screen.mean(i), screen.variance(i)});
    bound[static_cast<std::size_t>(i)] = b;
    scores[static_cast<std::size_t>(i)] = LearnScore{b, 0.0, static_cast<std::size_t>(i)};
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] > bound[b]; });
  double best = 0.0;
  std::size_t pos = 0;
  while (pos < order.size() && !(bound[order[pos]] < cutoff * best)) {
    std::size_t len = 0;
    while (pos + len < order.size() && len < static_cast<std::size_t>(kScoreChunk) &&
           !(bound[order[pos + len]] < cutoff * best)) {
      ++len;
    }
    best = std::max(best, score_block(std::span<const std::size_t>(order).subspan(pos, len)));
    pos += len;
  }
  return scores;
}

BatchSelection select_batch(std::span<const LearnScore> scores, const PointMatrix& candidates, std::size_t k,
                            RandomStream& rng, double reduction) {
  if (k == 0) throw ConfigError("select_batch: K must be at least 1");
  if (scores.empty() || candidates.rows() == 0) throw ConfigError("select_batch: empty candidate set");
  if (static_cast<Eigen::Index>(scores.size()) != candidates.rows()) {
    throw ConfigError("select_batch: scores and candidates differ in length");
  }
  BatchSelection sel;
  std::vector<std::size_t> all(scores.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (k == 1) {
    sel.indices.push_back(argmax_un(scores, all));
    return sel;
  }

  double max_un = 0.0;
  for (const auto& s : scores) max_un = std::max(max_un, s.un);
  std::vector<std::size_t> kept;
  for (std::size_t i : all) {
    if (scores[i].un >= reduction * max_un) kept.push_back(i);
  }

  // Drop exact duplicates, keeping the lowest index.
  std::vector<std::size_t> distinct;
  for (std::size_t i : distinct_rows(gather_rows(candidates, kept))) distinct.push_back(kept[i]);

  if (distinct.size() <= k) {
    sel.indices = distinct;
    sel.short_batch = distinct.size() < k;
    return sel;
  }

  const KMeansResult km = kmeans(gather_rows(candidates, distinct), k, rng);
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < distinct.size(); ++i) members[km.labels[i]].push_back(distinct[i]);
  std::vector<char> taken(scores.size(), 0);
  for (const auto& m : members) {
    if (m.empty()) continue;
    const std::size_t best = argmax_un(scores, m);
    sel.indices.push_back(best);
    taken[best] = 1;
  }
  // Empty clusters: fill with the best remaining candidates.
  while (sel.indices.size() < k) {
    std::vector<std::size_t> rest;
    for (std::size_t i : distinct) {
      if (!taken[i]) rest.push_back(i);
    }
    const std::size_t best = argmax_un(scores, rest);
    sel.indices.push_back(best);
    taken[best] = 1;
  }
  std::sort(sel.indices.begin(), sel.indices.end());
  return sel;
}

LoopState run(LimitState& limit_state, const ProbInput& input, const ActiveConfig& cfg) {
  if (limit_state.dim() != input.dim()) throw ConfigError("active: input model and limit state dimensions differ");
  if (cfg.n_ini < 2) throw ConfigError("active: n_ini must be at least 2");
  if (cfg.batch_size < 1) throw ConfigError("active: batch size must be at least 1");
  if (cfg.budget > 0 && cfg.budget < cfg.batch_size) throw ConfigError("active: budget must be 0 or at least the batch size");
  if (cfg.max_candidates < 1) throw ConfigError("active: max_candidates must be positive");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const RandomStream root(cfg.seed);
  RandomStream design_rng = root.substream(1);
  RandomStream loop_rng = root.substream(2);
  const std::uint64_t fit_key = root.substream(3).key();
  const std::uint64_t reliability_seed = root.substream(4).key();

  LoopState st;
  st.budget = cfg.budget;
  st.batch_size = cfg.batch_size;
  st.physical = lhs_design(input, cfg.n_ini, design_rng);
  PointMatrix u = input.to_standard(st.physical);
  Eigen::VectorXd y = limit_state.evaluate_rows(st.physical);
  std::size_t added = 0;
  std::optional<GpHyper> previous;
  const std::size_t dim = input.dim();

  for (;;) {
    st.design = Design::make(u, y);
    const std::size_t it = st.iteration + 1;

    const bool full = !previous || cfg.full_refit_every <= 1 || (it - 1) % cfg.full_refit_every == 0;
    std::optional<GpModel> model;
    std::string failure;
    for (std::size_t attempt = 0; attempt <= cfg.training_retries && !model; ++attempt) {
      FitOptions fo = cfg.fit;
      fo.seed = expand_seed(fit_key, it * 64 + attempt);
      if (attempt == 0 && !full) {
        fo.n_starts = 0;
        fo.warm_starts = {*previous};
      } else {
        if (previous) fo.warm_starts.push_back(*previous);
        fo.n_starts = std::max<std::size_t>(cfg.fit.n_starts, 1) << attempt;
      }
      try {
        model = fit(st.design, fo);
      } catch (const TrainingError& e) {
        failure = e.what();
      } catch (const NumericalError& e) {
        failure = e.what();
      }
      if (!model && attempt < cfg.training_retries) ++st.training_retries;
    }
    if (!model) {
      st.aborted = true;
      st.abort_reason = failure;
      break;
    }
    previous = model->hyper();
    st.model = model;
    st.iteration = it;

    const bool last = added >= cfg.budget;
    SubsetOptions ro = (last && cfg.final_reliability) ? *cfg.final_reliability : cfg.reliability;
    ro.retain_samples = !last;
    RandomStream rel_rng(reliability_seed);
    const GpModel& gp = *model;
    RelResult rr = subset_partial([&gp](const PointMatrix& pts) { return gp.predict_mean(pts); }, dim, ro, rel_rng);

    HistoryRow row;
    row.iteration = it;
    row.n = st.design.size();
    row.pf = rr.pf;
    row.beta = rr.beta;
    row.cov = rr.cov;
    row.evals = limit_state.eval_count();
    row.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    st.history.push_back(row);
    if (cfg.on_iteration) cfg.on_iteration(row);

    if (last) {
      st.final_result = std::move(rr);
      break;
    }
    if (cfg.early_stop && beta_stable(st.history, cfg.early_stop_tol, cfg.early_stop_window)) {
      st.early_stopped = true;
      st.final_result = std::move(rr);
      break;
    }

    const PointMatrix candidates = candidate_rows(rr.samples, cfg.max_candidates, loop_rng);
    const double s2n = cfg.scoring_noise_variance ? *cfg.scoring_noise_variance : gp.noise_variance();
    const std::size_t k = std::min(cfg.batch_size, cfg.budget - added);
    const auto scores = score_candidates(gp, candidates, s2n, k == 1 ? 1.0 : cfg.reduction);
    const BatchSelection sel = select_batch(scores, candidates, k, loop_rng, cfg.reduction);
    if (sel.short_batch) ++st.short_batches;

    const PointMatrix u_new = gather_rows(candidates, sel.indices);
    for (Eigen::Index i = 0; i < u_new.rows(); ++i) {
      if (((u.rowwise() - u_new.row(i)).rowwise().norm().array() < cfg.duplicate_tol).any()) ++st.duplicates;
    }
    const PointMatrix x_new = input.from_standard(u_new);
    const Eigen::VectorXd y_new = limit_state.evaluate_rows(x_new);

    const Eigen::Index old_n = u.rows();
    u.conservativeResize(old_n + u_new.rows(), Eigen::NoChange);
    u.bottomRows(u_new.rows()) = u_new;
    st.physical.conservativeResize(old_n + x_new.rows(), Eigen::NoChange);
    st.physical.bottomRows(x_new.rows()) = x_new;
    y.conservativeResize(old_n + y_new.size());
    y.tail(y_new.size()) = y_new;
    added += sel.indices.size();
  }
  return st;
}

}  // namespace relide
