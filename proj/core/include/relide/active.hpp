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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relide/gp.hpp"
#include "relide/input_model.hpp"
#include "relide/limit_state.hpp"
#include "relide/random.hpp"
#include "relide/reliability.hpp"

namespace relide {

// Probability that the surrogate predicts the wrong sign, Phi(-|mean| / std).
// Zero variance gives 0, or 0.5 when the mean is also zero.
double pm(const Prediction& p);

// Variance after one more noisy observation at the point:
// s2_g * s2_n / (s2_g + s2_n).
double lookahead_var(double sigma2_g, double sigma2_n);

struct LearnScore {
  double pm = 0.0;
  double un = 0.0;
  std::size_t index = 0;
};

/// U_N = Phi(-|mu| / sigma) - Phi(-|mu| / sigma_next), with sigma_next from
/// lookahead_var and the mean held fixed. With sigma2_n = 0 the score falls
/// back to pm (a noise-free observation removes the uncertainty entirely).
LearnScore un_score(const Prediction& p, double sigma2_n, std::size_t index = 0);

/// Scores every candidate against the model.
///
/// Exact U_N is computed only where it can matter. pm evaluated with the
/// screening variance bound of GpModel::predict_screen bounds both pm and U_N;
/// candidates whose bound falls below `cutoff` times the best U_N found are
/// returned with pm = bound and un = 0. cutoff = 0 scores everything exactly.
std::vector<LearnScore> score_candidates(const GpModel& model, const PointMatrix& candidates, double sigma2_n,
                                         double cutoff = 0.0);

struct BatchSelection {
  // Candidate indices, ascending within the batch.
  std::vector<std::size_t> indices;
  // Fewer than K distinct candidates survived the reduction.
  bool short_batch = false;
};

/// K = 1: argmax U_N (lowest index on ties). K > 1: keep candidates with
/// un >= reduction * max un, drop exact duplicates, cluster the rest into K
/// groups by k-means and take the best U_N of each group.
BatchSelection select_batch(std::span<const LearnScore> scores, const PointMatrix& candidates, std::size_t k,
                            RandomStream& rng, double reduction = 0.05);

struct HistoryRow {
  std::size_t iteration = 0;
  // Design size the surrogate was trained on.
  std::size_t n = 0;
  double pf = 0.0;
  double beta = 0.0;
  double cov = 0.0;
  // Limit-state evaluations so far.
  std::size_t evals = 0;
  double seconds = 0.0;
};

struct ActiveConfig {
  std::size_t n_ini = 10;
  std::size_t batch_size = 1;
  // Evaluations added after the initial design.
  std::size_t budget = 600;
  std::uint64_t seed = 0;

  // Estimator applied to the surrogate mean at every iteration, always with
  // the same seed. final_reliability, when set, replaces it for the last one.
  SubsetOptions reliability;
  std::optional<SubsetOptions> final_reliability;

  std::size_t max_candidates = 10'000;
  double reduction = 0.05;

  FitOptions fit;
  // Iterations between full multi-start fits; the others restart only from
  // the previous optimum. 1 makes every fit a full one.
  std::size_t full_refit_every = 20;
  std::size_t training_retries = 2;

  // Noise variance used in U_N; by default the fitted tau * sigma_total^2.
  std::optional<double> scoring_noise_variance;

  double duplicate_tol = 1e-8;

  // Stop once |beta_i - beta_{i-j}| < early_stop_tol for j = 1..window.
  bool early_stop = false;
  double early_stop_tol = 0.01;
  std::size_t early_stop_window = 5;

  std::function<void(const HistoryRow&)> on_iteration;
};

struct LoopState {
  std::size_t iteration = 0;
  // Design in standard-normal space, with its physical-space copy.
  Design design;
  PointMatrix physical;
  std::optional<GpModel> model;
  std::vector<HistoryRow> history;
  RelResult final_result;

  std::size_t budget = 0;
  std::size_t batch_size = 1;
  std::size_t duplicates = 0;
  std::size_t short_batches = 0;
  std::size_t training_retries = 0;
  bool early_stopped = false;
  // Training failed after all retries; history holds the completed iterations.
  bool aborted = false;
  std::string abort_reason;
};

/// Active-learning reliability loop: fit the surrogate, estimate pf on its
/// mean, score the retained estimator samples with U_N, evaluate the selected
/// points on the (noisy) limit state, and repeat until `budget` evaluations
/// have been added.
///
/// Deterministic for a given config, limit state and noise stream. Evaluation
/// errors of the limit state propagate.
LoopState run(LimitState& limit_state, const ProbInput& input, const ActiveConfig& cfg);

}  // namespace relide
