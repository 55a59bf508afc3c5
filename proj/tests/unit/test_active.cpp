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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "relide/active.hpp"
#include "relide/error.hpp"
#include "relide/problems.hpp"
#include "relide/stats.hpp"

namespace relide {
namespace {

double erfc_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TEST(Pm, Values) {
  EXPECT_NEAR(pm({1.0, 4.0}), erfc_cdf(-0.5), 1e-15);
  EXPECT_NEAR(pm({-1.0, 4.0}), erfc_cdf(-0.5), 1e-15);
  EXPECT_EQ(pm({1.0, 0.0}), 0.0);
  EXPECT_EQ(pm({0.0, 0.0}), 0.5);
  EXPECT_EQ(pm({0.0, 2.0}), 0.5);
}

TEST(Lookahead, Formula) {
  EXPECT_DOUBLE_EQ(lookahead_var(2.0, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(lookahead_var(3.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(lookahead_var(0.0, 1.0), 0.0);
  EXPECT_NEAR(lookahead_var(1.0, 1e12), 1.0, 1e-9);
}

TEST(UnScore, Degenerations) {
  const Prediction p{0.7, 0.5};
  const LearnScore free = un_score(p, 0.0, 3);
  EXPECT_EQ(free.un, free.pm);
  EXPECT_EQ(free.index, 3u);
  EXPECT_EQ(un_score({0.0, 0.5}, 0.2).un, 0.0);
  EXPECT_NEAR(un_score(p, 0.5).un, erfc_cdf(-0.7 / std::sqrt(0.5)) - erfc_cdf(-0.7 / 0.5), 1e-15);
}

TEST(UnScore, BoundedByPm) {
  RandomStream rng(1);
  for (int i = 0; i < 10000; ++i) {
    const Prediction p{rng.uniform(-5.0, 5.0), std::exp(rng.uniform(-8.0, 3.0))};
    const LearnScore s = un_score(p, std::exp(rng.uniform(-8.0, 3.0)));
    EXPECT_GE(s.un, 0.0);
    EXPECT_LE(s.un, s.pm);
  }
}

struct Fixture {
  GpModel model;
  PointMatrix candidates;
};

Fixture four_branch_fixture(std::size_t n_design, std::size_t n_candidates) {
  LimitState g = four_branch();
  LimitState noisy = corrupt(g, 0.36, RandomStream(1));
  RandomStream rng(2);
  const PointMatrix x = lhs_design(four_branch_input(), n_design, rng);
  const Design d = Design::make(x, noisy.evaluate_rows(x));
  const GpModel model = GpModel::condition(d, GpHyper{Eigen::Vector2d(1.5, 1.5), 0.05});
  PointMatrix c(static_cast<Eigen::Index>(n_candidates), 2);
  for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = 2.0 * rng.normal();
  return {model, c};
}

TEST(ScoreCandidates, PruningKeepsTheArgmax) {
  const Fixture f = four_branch_fixture(40, 5000);
  const double s2n = f.model.noise_variance();
  const auto exact = score_candidates(f.model, f.candidates, s2n, 0.0);
  const auto pruned = score_candidates(f.model, f.candidates, s2n, 1.0);
  ASSERT_EQ(exact.size(), pruned.size());
  RandomStream r1(3), r2(3);
  EXPECT_EQ(select_batch(exact, f.candidates, 1, r1).indices, select_batch(pruned, f.candidates, 1, r2).indices);
  // Exactly scored entries agree with pointwise scoring.
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const LearnScore direct = un_score(f.model.predict(f.candidates.row(i).transpose()), s2n, i);
    EXPECT_NEAR(exact[i].un, direct.un, 1e-12);
    EXPECT_NEAR(exact[i].pm, direct.pm, 1e-12);
    if (pruned[i].un > 0.0) EXPECT_NEAR(pruned[i].un, direct.un, 1e-12);
  }
}

TEST(ScoreCandidates, ReductionCutoffKeepsQualifyingSet) {
  const Fixture f = four_branch_fixture(40, 5000);
  const double s2n = f.model.noise_variance();
  const auto exact = score_candidates(f.model, f.candidates, s2n, 0.0);
  const auto pruned = score_candidates(f.model, f.candidates, s2n, 0.05);
  double best = 0.0;
  for (const auto& s : exact) best = std::max(best, s.un);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (exact[i].un >= 0.05 * best) EXPECT_NEAR(pruned[i].un, exact[i].un, 1e-12);
  }
}

TEST(SelectBatch, ArgmaxLowestIndexOnTies) {
  std::vector<LearnScore> s(4);
  s[0].un = 0.1;
  s[1].un = 0.3;
  s[2].un = 0.3;
  s[3].un = 0.2;
  PointMatrix c = PointMatrix::Random(4, 2);
  RandomStream rng(1);
  const BatchSelection b = select_batch(s, c, 1, rng);
  ASSERT_EQ(b.indices.size(), 1u);
  EXPECT_EQ(b.indices[0], 1u);
}

TEST(SelectBatch, DistinctPointsPerCluster) {
  const Fixture f = four_branch_fixture(40, 4000);
  const auto scores = score_candidates(f.model, f.candidates, f.model.noise_variance());
  RandomStream rng(4);
  const BatchSelection b = select_batch(scores, f.candidates, 5, rng);
  EXPECT_FALSE(b.short_batch);
  ASSERT_EQ(b.indices.size(), 5u);
  std::set<std::vector<double>> pts;
  for (std::size_t i : b.indices) pts.insert({f.candidates(i, 0), f.candidates(i, 1)});
  EXPECT_EQ(pts.size(), 5u);
  EXPECT_TRUE(std::is_sorted(b.indices.begin(), b.indices.end()));
}

TEST(SelectBatch, ShortWhenTooFewDistinct) {
  PointMatrix c(4, 1);
  c << 1.0, 1.0, 2.0, 2.0;
  std::vector<LearnScore> s(4);
  for (std::size_t i = 0; i < 4; ++i) s[i].un = 0.1 * static_cast<double>(i + 1);
  RandomStream rng(5);
  const BatchSelection b = select_batch(s, c, 3, rng);
  EXPECT_TRUE(b.short_batch);
  EXPECT_EQ(b.indices, (std::vector<std::size_t>{0, 2}));
}

TEST(SelectBatch, ReorderInvariance) {
  const Fixture f = four_branch_fixture(30, 2000);
  const double s2n = f.model.noise_variance();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(f.candidates.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  RandomStream shuffle(6);
  std::shuffle(perm.begin(), perm.end(), shuffle);
  PointMatrix c2(f.candidates.rows(), 2);
  for (std::size_t i = 0; i < perm.size(); ++i) c2.row(static_cast<Eigen::Index>(i)) = f.candidates.row(perm[i]);
  const auto s1 = score_candidates(f.model, f.candidates, s2n);
  const auto s2 = score_candidates(f.model, c2, s2n);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    EXPECT_NEAR(s2[i].un, s1[static_cast<std::size_t>(perm[i])].un, 1e-12);
  }
  RandomStream r1(7), r2(7);
  const auto b1 = select_batch(s1, f.candidates, 1, r1);
  const auto b2 = select_batch(s2, c2, 1, r2);
  EXPECT_EQ(f.candidates.row(b1.indices[0]), c2.row(b2.indices[0]));
}

TEST(SelectBatch, Invalid) {
  std::vector<LearnScore> s(2);
  PointMatrix c = PointMatrix::Zero(2, 1);
  RandomStream rng(8);
  EXPECT_THROW(select_batch(s, c, 0, rng), ConfigError);
  EXPECT_THROW(select_batch({}, PointMatrix(0, 1), 1, rng), ConfigError);
}

ActiveConfig small_config(std::size_t budget, std::size_t k) {
  ActiveConfig a;
  a.n_ini = 8;
  a.batch_size = k;
  a.budget = budget;
  a.seed = 42;
  a.reliability.n_per_level = 2000;
  a.max_candidates = 2000;
  a.fit.n_starts = 3;
  return a;
}

TEST(ActiveLoop, BudgetAndHistory) {
  LimitState g = four_branch();
  LimitState noisy = corrupt(g, 0.36, RandomStream(9));
  const LoopState st = run(noisy, four_branch_input(), small_config(12, 3));
  EXPECT_EQ(st.design.size(), 20u);
  EXPECT_EQ(noisy.eval_count(), 20u);
  EXPECT_EQ(st.history.size(), 5u);
  EXPECT_EQ(st.history.front().n, 8u);
  EXPECT_EQ(st.history.back().n, 20u);
  EXPECT_EQ(st.history.back().evals, 20u);
  EXPECT_FALSE(st.aborted);
  EXPECT_GT(st.final_result.pf, 0.0);
  EXPECT_EQ(st.physical.rows(), 20);
  EXPECT_LT((four_branch_input().to_standard(st.physical) - st.design.points).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ActiveLoop, Deterministic) {
  LimitState g1 = hat();
  LimitState g2 = hat();
  LimitState n1 = corrupt(g1, 1.0, RandomStream(10));
  LimitState n2 = corrupt(g2, 1.0, RandomStream(10));
  const LoopState a = run(n1, hat_input(), small_config(6, 1));
  const LoopState b = run(n2, hat_input(), small_config(6, 1));
  EXPECT_EQ(a.design.points, b.design.points);
  EXPECT_EQ(a.design.y, b.design.y);
  EXPECT_EQ(a.final_result.pf, b.final_result.pf);
}

TEST(ActiveLoop, EarlyStop) {
  LimitState g = rs();
  ActiveConfig a = small_config(200, 1);
  a.early_stop = true;
  a.early_stop_tol = 0.05;
  a.early_stop_window = 3;
  const LoopState st = run(g, rs_input(), a);
  EXPECT_TRUE(st.early_stopped);
  EXPECT_LT(st.design.size(), 208u);
  const std::size_t n = st.history.size();
  ASSERT_GE(n, 4u);
  for (std::size_t j = 1; j <= 3; ++j) EXPECT_LT(std::fabs(st.history[n - 1].beta - st.history[n - 1 - j].beta), 0.05);
}

TEST(ActiveLoop, NoiseFreeLinearProblem) {
  // g = R - S is linear: an interpolating surrogate recovers Phi(-3) quickly.
  LimitState g = rs();
  ActiveConfig a = small_config(20, 1);
  a.fit.fixed_tau = 0.0;
  a.reliability.n_per_level = 20000;
  const LoopState st = run(g, rs_input(), a);
  EXPECT_NEAR(st.final_result.beta, 3.0, 0.1);
}

TEST(ActiveLoop, InvalidConfig) {
  LimitState g = rs();
  ActiveConfig a = small_config(10, 1);
  a.n_ini = 1;
  EXPECT_THROW(run(g, rs_input(), a), ConfigError);
  a = small_config(2, 3);
  EXPECT_THROW(run(g, rs_input(), a), ConfigError);
  EXPECT_THROW(run(g, frame_input(), small_config(5, 1)), ConfigError);
}

}  // namespace
}  // namespace relide
