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
#include <functional>

#include <Eigen/Core>

namespace relide {

struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const { return x.cwiseMax(lower).cwiseMin(upper); }
};

struct NelderMeadOptions {
  std::size_t max_evals = 400;
  // Stop when both the spread of simplex values and the simplex extent
  // (infinity norm around the best vertex) fall below these.
  double f_tol = 1e-6;
  double x_tol = 1e-3;
  // Initial edge length as a fraction of the box width per coordinate.
  double initial_step = 0.1;
};

struct OptimResult {
  Eigen::VectorXd x;
  double f = 0.0;
  std::size_t evals = 0;
  bool converged = false;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Box-constrained Nelder-Mead with dimension-adaptive coefficients. Trial
// points are projected onto the box; non-finite objective values rank last.
OptimResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const Box& box,
                        const NelderMeadOptions& opts = {});

}  // namespace relide
