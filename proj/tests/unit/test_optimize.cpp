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

#include <gtest/gtest.h>

#include "relide/optimize.hpp"

namespace relide {
namespace {

Box box2(double lo, double hi) {
  return Box{Eigen::Vector2d::Constant(lo), Eigen::Vector2d::Constant(hi)};
}

TEST(NelderMead, Quadratic) {
  const auto f = [](const Eigen::VectorXd& x) { return (x - Eigen::Vector2d(0.3, -0.7)).squaredNorm(); };
  NelderMeadOptions o;
  o.x_tol = 1e-8;
  o.f_tol = 1e-14;
  o.max_evals = 2000;
  const OptimResult r = nelder_mead(f, Eigen::Vector2d(2.0, 2.0), box2(-5.0, 5.0), o);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x(0), 0.3, 1e-6);
  EXPECT_NEAR(r.x(1), -0.7, 1e-6);
}

TEST(NelderMead, Rosenbrock) {
  const auto f = [](const Eigen::VectorXd& x) {
    return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
  };
  NelderMeadOptions o;
  o.x_tol = 1e-9;
  o.f_tol = 1e-16;
  o.max_evals = 5000;
  const OptimResult r = nelder_mead(f, Eigen::Vector2d(-1.2, 1.0), box2(-3.0, 3.0), o);
  EXPECT_NEAR(r.x(0), 1.0, 1e-4);
  EXPECT_NEAR(r.x(1), 1.0, 1e-4);
}

TEST(NelderMead, StaysInBox) {
  const auto f = [](const Eigen::VectorXd& x) { return x.sum(); };
  const OptimResult r = nelder_mead(f, Eigen::Vector2d(0.5, 0.5), box2(0.0, 1.0));
  EXPECT_GE(r.x.minCoeff(), 0.0);
  EXPECT_NEAR(r.f, 0.0, 1e-3);
}

TEST(NelderMead, NonFiniteValuesRankLast) {
  const auto f = [](const Eigen::VectorXd& x) {
    return x(0) > 0.5 ? std::nan("") : (x(0) - 0.2) * (x(0) - 0.2) + x(1) * x(1);
  };
  const OptimResult r = nelder_mead(f, Eigen::Vector2d(0.0, 0.3), box2(-1.0, 1.0));
  EXPECT_TRUE(std::isfinite(r.f));
  EXPECT_NEAR(r.x(0), 0.2, 1e-2);
}

}  // namespace
}  // namespace relide
