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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "relide/stats.hpp"

namespace relide {
namespace {

double erfc_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TEST(NormalCdf, MatchesErfc) {
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    EXPECT_NEAR(normal_cdf(x) / erfc_cdf(x), 1.0, 1e-12) << x;
  }
}

TEST(NormalCdf, DeepTail) {
  // Phi(-20), independent value.
  EXPECT_NEAR(normal_cdf(-20.0) / 2.7536241186062336e-89, 1.0, 1e-10);
}

TEST(NormalQuantile, InvertsCdf) {
  for (double p : {1e-300, 1e-15, 1e-6, 0.001, 0.1, 0.5, 0.77, 0.999}) {
    EXPECT_NEAR(normal_cdf(normal_quantile(p)) / p, 1.0, 1e-10) << p;
  }
  EXPECT_EQ(normal_quantile(0.0), -INFINITY);
  EXPECT_EQ(normal_quantile(1.0), INFINITY);
}

TEST(NormalQuantile, UpperTail) {
  EXPECT_NEAR(normal_upper_quantile(1.3498980316300945e-3), 3.0, 1e-10);
  EXPECT_NEAR(normal_upper_quantile(1e-200), -normal_quantile(1e-200), 1e-9);
}

TEST(Quantile, Type7) {
  // numpy.quantile(..., method="linear") reference values.
  const std::vector<double> v{7.0, 1.0, 3.0, 5.0, 9.0, 2.0};
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 9.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.25), 2.25);
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 4.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.9), 8.0);
  EXPECT_DOUBLE_EQ(median(v), 4.0);
}

TEST(BoxStats, Summary) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0, 5.0};
  const BoxStats b = box_stats(v);
  EXPECT_DOUBLE_EQ(b.min, 1.0);
  EXPECT_DOUBLE_EQ(b.q1, 2.0);
  EXPECT_DOUBLE_EQ(b.median, 3.0);
  EXPECT_DOUBLE_EQ(b.q3, 4.0);
  EXPECT_DOUBLE_EQ(b.max, 5.0);
  EXPECT_DOUBLE_EQ(b.iqr(), 2.0);
}

TEST(Moments, MeanVariance) {
  const std::vector<double> v{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  EXPECT_DOUBLE_EQ(mean(v), 5.0);
  EXPECT_DOUBLE_EQ(variance(v), 32.0 / 7.0);
}

}  // namespace
}  // namespace relide
