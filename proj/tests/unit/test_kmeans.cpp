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

#include <set>

#include <gtest/gtest.h>

#include "relide/error.hpp"
#include "relide/kmeans.hpp"

namespace relide {
namespace {

PointMatrix blobs(RandomStream& rng) {
  const double cx[3] = {-5.0, 0.0, 5.0};
  PointMatrix p(300, 2);
  for (Eigen::Index i = 0; i < 300; ++i) {
    p(i, 0) = cx[i % 3] + 0.3 * rng.normal();
    p(i, 1) = 0.3 * rng.normal();
  }
  return p;
}

TEST(KMeans, SeparatesBlobs) {
  RandomStream data(1);
  const PointMatrix p = blobs(data);
  RandomStream rng(2);
  const KMeansResult r = kmeans(p, 3, rng);
  ASSERT_EQ(r.labels.size(), 300u);
  for (Eigen::Index i = 3; i < 300; ++i) EXPECT_EQ(r.labels[i], r.labels[i % 3]);
  std::set<std::size_t> distinct(r.labels.begin(), r.labels.end());
  EXPECT_EQ(distinct.size(), 3u);
  EXPECT_LE(r.iterations, 50u);
}

TEST(KMeans, SingleClusterIsCentroid) {
  RandomStream data(3);
  const PointMatrix p = blobs(data);
  RandomStream rng(4);
  const KMeansResult r = kmeans(p, 1, rng);
  EXPECT_NEAR((r.centers.row(0) - p.colwise().mean()).norm(), 0.0, 1e-12);
}

TEST(KMeans, KEqualsRows) {
  PointMatrix p(3, 1);
  p << 0.0, 1.0, 2.0;
  RandomStream rng(5);
  const KMeansResult r = kmeans(p, 3, rng);
  std::set<std::size_t> distinct(r.labels.begin(), r.labels.end());
  EXPECT_EQ(distinct.size(), 3u);
}

TEST(KMeans, Invalid) {
  PointMatrix p(2, 1);
  p << 0.0, 1.0;
  RandomStream rng(6);
  EXPECT_THROW(kmeans(p, 0, rng), ConfigError);
  EXPECT_THROW(kmeans(p, 3, rng), ConfigError);
}

}  // namespace
}  // namespace relide
