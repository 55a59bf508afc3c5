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

#include <array>
#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Core>

#include "relide/input_model.hpp"
#include "relide/random.hpp"

namespace relide {

/// Scalar limit-state function over physical space, optionally corrupted by
/// homoskedastic Gaussian noise. Failure is g <= 0.
///
/// Every call through operator() counts as one evaluation; the counter only
/// advances when the evaluator returns normally. Calls may come from several
/// threads: the counter is atomic and noise draws are serialized.
class LimitState {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  LimitState(std::string name, std::size_t dim, Evaluator evaluator);

  LimitState(LimitState&&) noexcept;
  LimitState& operator=(LimitState&&) noexcept;
  LimitState(const LimitState&) = delete;
  LimitState& operator=(const LimitState&) = delete;
  ~LimitState();

  double operator()(std::span<const double> x);
  double operator()(const Eigen::VectorXd& x);
  // One evaluation per row.
  Eigen::VectorXd evaluate_rows(const PointMatrix& x);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  bool noisy() const { return noise_sigma_ > 0.0; }
  bool has_noise_spec() const { return noise_rng_ != nullptr; }
  double noise_sigma() const { return noise_sigma_; }
  std::size_t eval_count() const { return count_->load(); }

  friend LimitState corrupt(const LimitState& base, double sigma_eps, RandomStream rng);

 private:
  std::string name_;
  std::size_t dim_;
  std::shared_ptr<const Evaluator> evaluator_;
  double noise_sigma_ = 0.0;
  std::unique_ptr<RandomStream> noise_rng_;
  std::unique_ptr<std::mutex> noise_mutex_;
  std::unique_ptr<std::atomic<std::size_t>> count_;
};

// gamma * (r - s).
LimitState rs(double gamma = 1.0);
// Four-branch series system, the minimum of
//   3 + 0.1 (x1 - x2)^2 - (x1 + x2) / sqrt(2),  3 + 0.1 (x1 - x2)^2 + (x1 + x2) / sqrt(2),
//   (x1 - x2) + 6 / sqrt(2),                    (x2 - x1) + 6 / sqrt(2).
LimitState four_branch();
std::array<double, 4> four_branch_terms(double x1, double x2);
// 12 - (x1 - x2)^2 - 8 (x1 + x2 - 4)^3.
LimitState hat();

/// g~(x) = g(x) + eps with eps ~ N(0, sigma_eps^2), drawn from `rng`.
///
/// sigma_eps = 0 returns the base values bit for bit. The base must be
/// deterministic; corrupting an already corrupted model is a ConfigError.
LimitState corrupt(const LimitState& base, double sigma_eps, RandomStream rng);

struct CalibrationResult {
  double sigma_eps = 0.0;
  double q_alpha = 0.0;
  std::size_t roi_count = 0;
};

/// Region-of-interest noise calibration.
///
/// Draws n points of X, takes the empirical (type-7) alpha-quantile q of |g|,
/// and returns the standard deviation of the outputs with |g| < q. Requires at
/// least 100 outputs in the region.
CalibrationResult calibrate_noise_detailed(LimitState& base, const ProbInput& input, double alpha,
                                           std::size_t n, RandomStream& rng);
double calibrate_noise(LimitState& base, const ProbInput& input, double alpha, std::size_t n,
                       RandomStream& rng);

constexpr std::size_t kDefaultCalibrationSamples = 1'000'000;

}  // namespace relide
