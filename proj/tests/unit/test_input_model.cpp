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
#include <vector>

#include <gtest/gtest.h>

#include "relide/error.hpp"
#include "relide/input_model.hpp"
#include "relide/problems.hpp"
#include "relide/stats.hpp"

namespace relide {
namespace {

TEST(Marginal, GaussianRoundTrip) {
  const Marginal m = Marginal::gaussian(2.0, 0.5);
  EXPECT_DOUBLE_EQ(m.to_normal(2.0), 0.0);
  EXPECT_NEAR(m.to_normal(3.0), 2.0, 1e-12);
  for (double z = -6.0; z <= 6.0; z += 0.5) EXPECT_NEAR(m.to_normal(m.from_normal(z)), z, 1e-9);
}

TEST(Marginal, LognormalParameters) {
  const double mu = 10.0, sd = 3.0;
  const Marginal m = Marginal::lognormal(mu, sd);
  const double zeta = std::sqrt(std::log1p((sd / mu) * (sd / mu)));
  EXPECT_NEAR(m.zeta(), zeta, 1e-14);
  EXPECT_NEAR(m.lambda(), std::log(mu) - 0.5 * zeta * zeta, 1e-14);
  // Median of a lognormal is exp(lambda).
  EXPECT_NEAR(m.quantile(0.5), std::exp(m.lambda()), 1e-10);
  EXPECT_THROW(m.to_normal(-1.0), DomainError);
  for (double z = -5.0; z <= 5.0; z += 0.5) EXPECT_NEAR(m.to_normal(m.from_normal(z)), z, 1e-8);
}

TEST(Marginal, TruncatedGaussian) {
  const Marginal m = Marginal::truncated_gaussian(1.0, 1.0, 0.0, INFINITY);
  EXPECT_DOUBLE_EQ(m.cdf(0.0), 0.0);
  EXPECT_FALSE(m.in_support(-0.1));
  // F(x) = (Phi(x - 1) - Phi(-1)) / (1 - Phi(-1)).
  const double x = 1.7;
  const double expected = (normal_cdf(x - 1.0) - normal_cdf(-1.0)) / (1.0 - normal_cdf(-1.0));
  EXPECT_NEAR(m.cdf(x), expected, 1e-13);
  EXPECT_NEAR(m.quantile(expected), x, 1e-9);
  for (double z = -5.0; z <= 5.0; z += 0.5) {
    const double v = m.from_normal(z);
    EXPECT_GE(v, 0.0);
    EXPECT_NEAR(m.to_normal(v), z, 1e-7);
  }
}

TEST(Marginal, InvalidParameters) {
  EXPECT_THROW(Marginal::gaussian(0.0, 0.0), ConfigError);
  EXPECT_THROW(Marginal::lognormal(-1.0, 1.0), ConfigError);
  EXPECT_THROW(Marginal::truncated_gaussian(0.0, 1.0, 1.0, 0.0), ConfigError);
}

TEST(ProbInput, IndependentTransformIsMarginalWise) {
  const ProbInput in = rs_input();
  Eigen::VectorXd x(2);
  x << 5.8, 1.4;
  const Eigen::VectorXd u = in.to_standard(x);
  EXPECT_NEAR(u(0), 1.0, 1e-12);
  EXPECT_NEAR(u(1), -1.0, 1e-12);
  EXPECT_NEAR((in.from_standard(u) - x).norm(), 0.0, 1e-12);
}

TEST(ProbInput, CopulaCorrelationRecovered) {
  Eigen::MatrixXd c(2, 2);
  c << 1.0, 0.7, 0.7, 1.0;
  const ProbInput in({Marginal::lognormal(1.0, 0.3), Marginal::gaussian(0.0, 2.0)}, c);
  RandomStream rng(11);
  const PointMatrix x = sample(in, 100000, rng);
  // Correlation of the normal scores z_i = Phi^-1(F_i(x_i)).
  Eigen::MatrixXd z(x.rows(), 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    z(i, 0) = in.marginal(0).to_normal(x(i, 0));
    z(i, 1) = in.marginal(1).to_normal(x(i, 1));
  }
  const double rho = (z.col(0).array() * z.col(1).array()).mean();
  EXPECT_NEAR(rho, 0.7, 0.01);
  // Standard-space images are uncorrelated.
  const PointMatrix u = in.to_standard(x);
  EXPECT_NEAR((u.col(0).array() * u.col(1).array()).mean(), 0.0, 0.01);
  const PointMatrix back = in.from_standard(u);
  EXPECT_LT((back - x).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ProbInput, RejectsBadCorrelation) {
  Eigen::MatrixXd c(2, 2);
  c << 1.0, 1.5, 1.5, 1.0;
  EXPECT_THROW(ProbInput({Marginal::gaussian(0, 1), Marginal::gaussian(0, 1)}, c), ConfigError);
}

TEST(ProbInput, FrameInputShape) {
  const ProbInput in = frame_input();
  EXPECT_EQ(in.dim(), 21u);
  EXPECT_FALSE(in.independent());
  EXPECT_DOUBLE_EQ(in.correlation()(3, 4), 0.90);
}

TEST(Lhs, OnePointPerStratum) {
  const ProbInput in = four_branch_input();
  RandomStream rng(4);
  const std::size_t n = 50;
  const PointMatrix x = lhs_design(in, n, rng);
  ASSERT_EQ(x.rows(), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    std::vector<int> hits(n, 0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double p = normal_cdf(x(i, j));
      ++hits[static_cast<std::size_t>(p * static_cast<double>(n))];
    }
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(Lhs, Deterministic) {
  const ProbInput in = hat_input();
  RandomStream a(9), b(9);
  EXPECT_EQ(lhs_design(in, 20, a), lhs_design(in, 20, b));
}

}  // namespace
}  // namespace relide
