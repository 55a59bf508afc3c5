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

#include "relide/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "relide/error.hpp"

namespace relide {

namespace {

double sanitize(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

OptimResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const Box& box,
                        const NelderMeadOptions& opts) {
  const Eigen::Index n = x0.size();
  if (n == 0) throw ConfigError("nelder_mead: empty parameter vector");
  if (box.lower.size() != n || box.upper.size() != n) throw ConfigError("nelder_mead: box dimension mismatch");

  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  OptimResult result;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++result.evals;
    return sanitize(f(x));
  };

  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n + 1));
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  simplex[0] = box.clamp(x0);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = simplex[0];
    const double step = opts.initial_step * (box.upper(i) - box.lower(i));
    v(i) = (v(i) + step <= box.upper(i)) ? v(i) + step : v(i) - step;
    simplex[static_cast<std::size_t>(i + 1)] = box.clamp(v);
  }
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double x_spread = 0.0;
    for (const auto& v : simplex) x_spread = std::max(x_spread, (v - simplex[best]).cwiseAbs().maxCoeff());
    const double f_spread = values[worst] - values[best];
    if (std::isfinite(values[best]) && f_spread <= opts.f_tol && x_spread <= opts.x_tol) {
      result.converged = true;
      break;
    }
    if (result.evals >= opts.max_evals) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= dn;

    const Eigen::VectorXd xr = box.clamp(centroid + reflect * (centroid - simplex[worst]));
    const double fr = eval(xr);
    if (fr < values[best]) {
      const Eigen::VectorXd xe = box.clamp(centroid + expand * (xr - centroid));
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    // Contraction, outside if the reflection improved on the worst vertex.
    const bool outside = fr < values[worst];
    const Eigen::VectorXd xc = outside ? Eigen::VectorXd(box.clamp(centroid + contract * (xr - centroid)))
                                       : Eigen::VectorXd(box.clamp(centroid + contract * (simplex[worst] - centroid)));
    const double fc = eval(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = box.clamp(simplex[best] + shrink * (simplex[i] - simplex[best]));
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  result.f = *best_it;
  return result;
}

}  // namespace relide
