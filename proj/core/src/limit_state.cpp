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

#include "relide/limit_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "relide/error.hpp"
#include "relide/stats.hpp"

namespace relide {

LimitState::LimitState(std::string name, std::size_t dim, Evaluator evaluator)
    : name_(std::move(name)),
      dim_(dim),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      count_(std::make_unique<std::atomic<std::size_t>>(0)) {
  if (dim_ == 0) throw ConfigError("limit state needs at least one input");
  if (!*evaluator_) throw ConfigError("limit state evaluator is empty");
}

LimitState::LimitState(LimitState&&) noexcept = default;
LimitState& LimitState::operator=(LimitState&&) noexcept = default;
LimitState::~LimitState() = default;

double LimitState::operator()(std::span<const double> x) {
  if (x.size() != dim_) throw ConfigError("limit state '" + name_ + "': point dimension mismatch");
  double y = (*evaluator_)(x);
  if (noise_rng_ && noise_sigma_ > 0.0) {
    std::lock_guard lock(*noise_mutex_);
    y += noise_sigma_ * noise_rng_->normal();
  }
  count_->fetch_add(1);
  return y;
}

double LimitState::operator()(const Eigen::VectorXd& x) {
  return (*this)(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Eigen::VectorXd LimitState::evaluate_rows(const PointMatrix& x) {
  Eigen::VectorXd y(x.rows());
  Eigen::VectorXd row(x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    row = x.row(r).transpose();
    y(r) = (*this)(row);
  }
  return y;
}

LimitState corrupt(const LimitState& base, double sigma_eps, RandomStream rng) {
  if (base.has_noise_spec()) throw ConfigError("limit state '" + base.name() + "' is already noisy");
  if (!(sigma_eps >= 0.0) || !std::isfinite(sigma_eps)) throw ConfigError("noise standard deviation must be >= 0");
  LimitState out(base.name_, base.dim_, *base.evaluator_);
  out.evaluator_ = base.evaluator_;
  out.noise_sigma_ = sigma_eps;
  out.noise_rng_ = std::make_unique<RandomStream>(rng);
  out.noise_mutex_ = std::make_unique<std::mutex>();
  return out;
}

LimitState rs(double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("rs: gamma must be positive");
  return LimitState("rs", 2, [gamma](std::span<const double> x) { return gamma * (x[0] - x[1]); });
}

std::array<double, 4> four_branch_terms(double x1, double x2) {
  const double s = x1 + x2;
  const double d = x1 - x2;
  const double c = 6.0 / std::numbers::sqrt2;
  return {3.0 + 0.1 * d * d - s / std::numbers::sqrt2, 3.0 + 0.1 * d * d + s / std::numbers::sqrt2,
          d + c, -d + c};
}

LimitState four_branch() {
  return LimitState("four_branch", 2, [](std::span<const double> x) {
    const auto t = four_branch_terms(x[0], x[1]);
    return std::min({t[0], t[1], t[2], t[3]});
  });
}

LimitState hat() {
  return LimitState("hat", 2, [](std::span<const double> x) {
    const double d = x[0] - x[1];
    const double s = x[0] + x[1] - 4.0;
    return 12.0 - d * d - 8.0 * s * s * s;
  });
}

CalibrationResult calibrate_noise_detailed(LimitState& base, const ProbInput& input, double alpha,
                                           std::size_t n, RandomStream& rng) {
  if (base.has_noise_spec()) throw ConfigError("noise calibration requires a deterministic limit state");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("calibration level alpha must lie in (0, 1)");
  if (input.dim() != base.dim()) throw ConfigError("input model and limit state dimensions differ");

  std::vector<double> y(n);
  std::vector<double> abs_y(n);
  constexpr std::size_t kBlock = 65536;
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t count = std::min(kBlock, n - start);
    const PointMatrix x = sample(input, count, rng);
    const Eigen::VectorXd block = base.evaluate_rows(x);
    for (std::size_t i = 0; i < count; ++i) {
      y[start + i] = block(static_cast<Eigen::Index>(i));
      abs_y[start + i] = std::abs(y[start + i]);
    }
  }
  std::sort(abs_y.begin(), abs_y.end());
  CalibrationResult result;
  result.q_alpha = quantile_sorted(abs_y, alpha);

  std::vector<double> roi;
  roi.reserve(static_cast<std::size_t>(alpha * static_cast<double>(n)) + 1);
  for (double v : y) {
    if (std::abs(v) < result.q_alpha) roi.push_back(v);
  }
  result.roi_count = roi.size();
  if (roi.size() < 100) {
    std::ostringstream os;
    os << "noise calibration: only " << roi.size() << " of " << n
       << " samples fall in the region of interest (need >= 100)";
    throw CalibrationError(os.str(), roi.size());
  }
  result.sigma_eps = std::sqrt(variance(roi));
  return result;
}

double calibrate_noise(LimitState& base, const ProbInput& input, double alpha, std::size_t n,
                       RandomStream& rng) {
  return calibrate_noise_detailed(base, input, alpha, n, rng).sigma_eps;
}

}  // namespace relide
