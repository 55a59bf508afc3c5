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
#include <vector>

#include <Eigen/Core>

#include "relide/error.hpp"
#include "relide/input_model.hpp"
#include "relide/limit_state.hpp"
#include "relide/random.hpp"

namespace relide {

// Batched function over standard-normal space: one value per row of u.
using BatchFunction = std::function<Eigen::VectorXd(const PointMatrix& u)>;

// Composes a physical-space limit state with the input transform.
BatchFunction in_standard_space(LimitState& limit_state, const ProbInput& input);

// -Phi^-1(pf); +inf at pf = 0, -inf at pf = 1.
double beta_from_pf(double pf);

struct RelResult {
  double pf = 0.0;
  double beta = 0.0;
  // Coefficient of variation of the estimator; +inf when pf = 0.
  double cov = 0.0;
  std::size_t n_evals = 0;
  // No sample reached g <= 0; pf is then 0 and pf_upper_bound = 1 / n.
  bool no_failures = false;
  double pf_upper_bound = 0.0;

  // Subset simulation only.
  std::vector<double> thresholds;
  std::size_t levels = 0;
  bool level_limit_reached = false;
  // All populations of all levels (standard space) and their function values.
  PointMatrix samples;
  Eigen::VectorXd sample_values;
};

struct McsOptions {
  std::size_t n = 100'000;
  // When set, keep sampling blocks of `block` points until cov <= target_cov
  // or max_n samples.
  std::optional<double> target_cov;
  std::size_t max_n = 10'000'000;
  std::size_t block = 100'000;
};

RelResult mcs(const BatchFunction& fn, std::size_t dim, const McsOptions& opts, RandomStream& rng);
RelResult mcs(LimitState& limit_state, const ProbInput& input, const McsOptions& opts, RandomStream& rng);

struct SubsetOptions {
  std::size_t n_per_level = 100'000;
  double p0 = 0.1;
  std::size_t max_levels = 12;
  // Component-wise Metropolis proposal: uniform on [u - width, u + width].
  double proposal_width = 1.0;
  bool retain_samples = true;
};

class SubsetLevelError : public Error {
 public:
  SubsetLevelError(const std::string& what, RelResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const RelResult& partial() const noexcept { return partial_; }
  double last_threshold() const { return partial_.thresholds.empty() ? 0.0 : partial_.thresholds.back(); }

 private:
  RelResult partial_;
};

/// Subset simulation in standard-normal space with component-wise
/// Metropolis chains. Intermediate thresholds are the empirical p0-quantiles
/// of the current population; the coefficient of variation aggregates the
/// per-level delta-method estimates including chain correlation.
///
/// Throws SubsetLevelError when max_levels populations do not reach g <= 0.
RelResult subset(const BatchFunction& fn, std::size_t dim, const SubsetOptions& opts, RandomStream& rng);
RelResult subset(LimitState& limit_state, const ProbInput& input, const SubsetOptions& opts, RandomStream& rng);

// Same as subset() but returns the partial result (level_limit_reached set)
// instead of throwing.
RelResult subset_partial(const BatchFunction& fn, std::size_t dim, const SubsetOptions& opts, RandomStream& rng);

struct RsAnalytic {
  double pf_free = 0.0;
  double pf_noisy = 0.0;
};

// Closed-form failure probabilities of gamma (R - S) with and without
// additive N(0, sigma_eps^2) noise.
RsAnalytic rs_analytic(double mu_r, double sigma_r, double mu_s, double sigma_s, double sigma_eps, double gamma);

}  // namespace relide
