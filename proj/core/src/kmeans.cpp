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

#include "relide/kmeans.hpp"

#include <limits>

#include "relide/error.hpp"

namespace relide {

KMeansResult kmeans(const PointMatrix& points, std::size_t k, RandomStream& rng, std::size_t max_iterations) {
  const Eigen::Index n = points.rows();
  if (k == 0 || static_cast<Eigen::Index>(k) > n) throw ConfigError("kmeans: k must lie in [1, number of points]");
  const auto kk = static_cast<Eigen::Index>(k);

  KMeansResult r;
  r.centers.resize(kk, points.cols());
  r.centers.row(0) = points.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
  Eigen::VectorXd d2 = (points.rowwise() - r.centers.row(0)).rowwise().squaredNorm();
  for (Eigen::Index c = 1; c < kk; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > target && d2(i) > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    r.centers.row(c) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - r.centers.row(c)).rowwise().squaredNorm());
  }

  r.labels.assign(static_cast<std::size_t>(n), k);
  for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < kk; ++c) {
        const double d = (points.row(i) - r.centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::size_t>(c);
        }
      }
      if (r.labels[static_cast<std::size_t>(i)] != best) {
        r.labels[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed) break;
    PointMatrix sums = PointMatrix::Zero(kk, points.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(kk);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = static_cast<Eigen::Index>(r.labels[static_cast<std::size_t>(i)]);
      sums.row(c) += points.row(i);
      counts(c) += 1.0;
    }
    for (Eigen::Index c = 0; c < kk; ++c) {
      if (counts(c) > 0.0) r.centers.row(c) = sums.row(c) / counts(c);
    }
  }
  return r;
}

}  // namespace relide
