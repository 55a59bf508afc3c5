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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "relide/random.hpp"

namespace relide {
namespace {

TEST(Mix64, SplitMixReference) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(mix64(0x9E3779B97F4A7C15ull), 0xE220A8397B1DCDAFull);
}

TEST(ExpandSeed, XorThenMix) {
  for (std::uint64_t r = 0; r < 5; ++r) EXPECT_EQ(expand_seed(42, r), mix64(42 ^ r));
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 1000; ++r) seen.insert(expand_seed(7, r));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(RandomStream, Deterministic) {
  RandomStream a(123);
  RandomStream b(123);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  RandomStream c(124);
  EXPECT_NE(RandomStream(123)(), c());
}

TEST(RandomStream, SubstreamsDiffer) {
  const RandomStream root(5);
  RandomStream s1 = root.substream(1);
  RandomStream s2 = root.substream(2);
  RandomStream s1b = root.substream(1);
  EXPECT_NE(s1.key(), s2.key());
  EXPECT_EQ(s1(), s1b());
}

TEST(RandomStream, UniformAndNormalMoments) {
  RandomStream r(99);
  const int n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = r.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.01);
}

TEST(RandomStream, BelowIsUnbiased) {
  RandomStream r(3);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto k = r.below(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

}  // namespace
}  // namespace relide
