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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "relide/input_model.hpp"
#include "relide/optimize.hpp"

namespace relide {

// Matern 5/2 correlation of the anisotropically scaled distance h >= 0.
double matern52(double h);

/// Training data of a Gaussian process: points in standard-normal space and
/// their (possibly noisy) observations. Observations are standardized to zero
/// mean and unit variance for fitting; shift and scale are kept to map
/// predictions back. Replicated points are allowed.
struct Design {
  PointMatrix points;
  Eigen::VectorXd y;
  double output_shift = 0.0;
  double output_scale = 1.0;

  static Design make(PointMatrix points, Eigen::VectorXd y);

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points.cols()); }
  Eigen::VectorXd standardized() const { return (y.array() - output_shift) / output_scale; }
};

// Lengthscales theta (one per input) and noise ratio tau = sigma_n^2 / sigma_total^2.
struct GpHyper {
  Eigen::VectorXd theta;
  double tau = 0.0;
};

struct LikelihoodEval {
  // 1/2 [log det R~ + N log(2 pi sigma_total^2) + N]
  double value = 0.0;
  // Maximum-likelihood sigma_total^2 = Y^T R~^-1 Y / N, standardized units, floored.
  double sigma2_total = 0.0;
  int jitter_level = 0;
};

/// Concentrated negative log-likelihood of (theta, tau) on the standardized
/// observations, with R~ = (1 - tau) R + tau I.
///
/// Throws NumericalError when R~ stays indefinite after the jitter ladder
/// (1e-10, 1e-8, 1e-6 added to the diagonal).
LikelihoodEval neg_log_likelihood(const Design& design, const Eigen::VectorXd& theta, double tau);

// Gaussian predictive distribution at one point, in output units.
struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

struct PredictionBatch {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

/// A conditioned simple-kriging model (zero trend on standardized outputs).
///
///   mean(x)     = shift + scale * r~(x)^T R~^-1 Y
///   variance(x) = sigma_total^2 (1 - r~(x)^T R~^-1 r~(x)),   r~ = (1 - tau) r
///
/// The variance is that of a new noisy observation at x, so it never drops
/// below the noise level away from tau = 0 and tends to sigma_total^2 far from
/// the data. Immutable and cheap to copy; prediction is reentrant.
class GpModel {
 public:
  static GpModel condition(const Design& design, const GpHyper& hyper);

  Prediction predict(const Eigen::VectorXd& u) const;
  PredictionBatch predict_batch(const PointMatrix& u) const;
  Eigen::VectorXd predict_mean(const PointMatrix& u) const;
  // Means together with an upper bound on each variance: the variance given
  // only the most correlated training point. Conditioning on more points never
  // increases a Gaussian variance.
  PredictionBatch predict_screen(const PointMatrix& u) const;

  const Design& design() const;
  const GpHyper& hyper() const;
  const Eigen::VectorXd& theta() const { return hyper().theta; }
  double tau() const { return hyper().tau; }
  // Output units.
  double sigma2_total() const;
  double process_variance() const { return (1.0 - tau()) * sigma2_total(); }
  double noise_variance() const { return tau() * sigma2_total(); }
  double neg_log_likelihood() const;
  int jitter_level() const;
  double jitter() const;

  // Lower Cholesky factor of R~ (jitter included).
  Eigen::MatrixXd cholesky_factor() const;
  // R~^-1 Y on the standardized observations.
  const Eigen::VectorXd& alpha() const;

  // Number of predicted variances clamped at zero so far.
  std::size_t clamp_events() const { return clamps_->load(); }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  std::shared_ptr<std::atomic<std::size_t>> clamps_;
};

struct FitOptions {
  // Random starts, drawn by Latin hypercube over the search box.
  std::size_t n_starts = 10;
  double theta_min = 0.1;
  double theta_max = 10.0;
  double tau_min = 1e-6;
  double tau_max = 1.0 - 1e-6;
  // Known noise ratio; tau is then excluded from the search.
  std::optional<double> fixed_tau;
  std::uint64_t seed = 0;
  // Additional starting points tried before the random ones.
  std::vector<GpHyper> warm_starts;
  // Edge of the initial simplex around a warm start, as a box fraction.
  double warm_step = 0.02;
  NelderMeadOptions optimizer;
  // Likelihood is evaluated on at most this many randomly chosen points; the
  // returned model is conditioned on the full design. 0 disables the cap.
  std::size_t ml_subset = 1000;
};

struct FitReport {
  std::size_t starts = 0;
  std::size_t failed_starts = 0;
  std::size_t evaluations = 0;
  std::size_t jitter_uses = 0;
  double best_value = 0.0;
};

// Multi-start bounded Nelder-Mead over (log theta, logit tau). Deterministic
// for a given seed. Throws TrainingError when every start fails.
GpModel fit(const Design& design, const FitOptions& opts, FitReport* report = nullptr);

}  // namespace relide
