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

#include <benchmark/benchmark.h>

#include "relide/active.hpp"
#include "relide/gp.hpp"
#include "relide/limit_state.hpp"
#include "relide/problems.hpp"

namespace {

relide::Design make_design(std::size_t n) {
  relide::LimitState g = relide::four_branch();
  relide::LimitState noisy = relide::corrupt(g, 0.36, relide::RandomStream(1));
  relide::RandomStream rng(2);
  const relide::PointMatrix x = relide::lhs_design(relide::four_branch_input(), n, rng);
  return relide::Design::make(x, noisy.evaluate_rows(x));
}

relide::PointMatrix normal_points(std::size_t n) {
  relide::RandomStream rng(3);
  relide::PointMatrix u(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < u.size(); ++i) u.data()[i] = rng.normal();
  return u;
}

void BM_NegLogLikelihood(benchmark::State& state) {
  const relide::Design d = make_design(static_cast<std::size_t>(state.range(0)));
  const Eigen::Vector2d theta(1.5, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(relide::neg_log_likelihood(d, theta, 0.05).value);
}
BENCHMARK(BM_NegLogLikelihood)->Arg(100)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_PredictMean(benchmark::State& state) {
  const relide::GpModel gp =
      relide::GpModel::condition(make_design(static_cast<std::size_t>(state.range(0))), {Eigen::Vector2d(1.5, 1.5), 0.05});
  const relide::PointMatrix u = normal_points(100000);
  for (auto _ : state) benchmark::DoNotOptimize(gp.predict_mean(u).data());
  state.SetItemsProcessed(state.iterations() * u.rows());
}
BENCHMARK(BM_PredictMean)->Arg(100)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_ScoreCandidates(benchmark::State& state) {
  const relide::GpModel gp = relide::GpModel::condition(make_design(600), {Eigen::Vector2d(1.5, 1.5), 0.05});
  const relide::PointMatrix u = normal_points(10000);
  const double cutoff = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(relide::score_candidates(gp, u, gp.noise_variance(), cutoff).data());
}
BENCHMARK(BM_ScoreCandidates)->Arg(0)->Arg(5)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const relide::Design d = make_design(static_cast<std::size_t>(state.range(0)));
  relide::FitOptions o;
  o.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(relide::fit(d, o).tau());
}
BENCHMARK(BM_Fit)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
