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

#include "relide/problems.hpp"

#include <limits>
#include <vector>

#include "relide/error.hpp"
#include "relide/stats.hpp"

namespace relide {

ProbInput rs_input(double mu_r, double sigma_r, double mu_s, double sigma_s) {
  return ProbInput({Marginal::gaussian(mu_r, sigma_r), Marginal::gaussian(mu_s, sigma_s)}, std::vector<std::string>{"R", "S"});
}

ProbInput four_branch_input() {
  return ProbInput({Marginal::gaussian(0.0, 1.0), Marginal::gaussian(0.0, 1.0)}, std::vector<std::string>{"x1", "x2"});
}

ProbInput hat_input() {
  return ProbInput({Marginal::gaussian(0.25, 1.0), Marginal::gaussian(0.25, 1.0)}, std::vector<std::string>{"x1", "x2"});
}

ProbInput frame_input() {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<Marginal> m;
  std::vector<std::string> names;
  m.push_back(Marginal::lognormal(133.454, 40.04));
  m.push_back(Marginal::lognormal(88.97, 35.59));
  m.push_back(Marginal::lognormal(71.175, 28.47));
  names = {"P1", "P2", "P3"};
  auto tg = [&](double mean, double std) { m.push_back(Marginal::truncated_gaussian(mean, std, 0.0, kInf)); };
  tg(2.1738e7, 3.8304e6);
  tg(2.3796e7, 3.8304e6);
  names.insert(names.end(), {"E4", "E5"});
  const double inertia[8][2] = {{8.1344e-3, 1.0834e-3}, {1.1509e-2, 1.2980e-3}, {2.1375e-2, 2.5961e-3},
                                {2.5961e-2, 3.0288e-3}, {1.0812e-2, 2.5961e-3}, {1.4105e-2, 3.4615e-3},
                                {2.3279e-2, 5.6249e-3}, {2.5961e-2, 6.4902e-3}};
  const double area[8][2] = {{3.1256e-1, 5.5815e-2}, {3.7210e-1, 7.4420e-2}, {5.0606e-1, 9.3025e-2},
                             {5.5815e-1, 1.1163e-1}, {2.5302e-1, 9.3025e-2}, {2.9117e-1, 1.0232e-1},
                             {3.7303e-1, 1.2093e-1}, {4.1860e-1, 1.9537e-1}};
  for (int k = 0; k < 8; ++k) {
    tg(inertia[k][0], inertia[k][1]);
    names.push_back("I" + std::to_string(6 + k));
  }
  for (int k = 0; k < 8; ++k) {
    tg(area[k][0], area[k][1]);
    names.push_back("A" + std::to_string(14 + k));
  }

  constexpr int kDim = 21;
  constexpr int kFirstInertia = 5;
  constexpr int kFirstArea = 13;
  Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(kDim, kDim);
  corr(3, 4) = corr(4, 3) = 0.90;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double rho = (i == j) ? 0.95 : 0.13;
      corr(kFirstArea + i, kFirstInertia + j) = corr(kFirstInertia + j, kFirstArea + i) = rho;
      if (i != j) {
        corr(kFirstInertia + i, kFirstInertia + j) = 0.13;
        corr(kFirstArea + i, kFirstArea + j) = 0.13;
      }
    }
  }
  return ProbInput(std::move(m), std::move(corr), std::move(names));
}

BuiltinProblem builtin_problem(const std::string& name) {
  if (name == "rs") return {name, rs_input(), normal_cdf(-3.0)};
  if (name == "four_branch") return {name, four_branch_input(), kFourBranchReferencePf};
  if (name == "hat") return {name, hat_input(), kHatReferencePf};
  throw ConfigError("unknown builtin problem '" + name + "' (expected rs, four_branch or hat)");
}

LimitState builtin_limit_state(const std::string& name, double gamma) {
  if (name == "rs") return rs(gamma);
  if (name == "four_branch") return four_branch();
  if (name == "hat") return hat();
  throw ConfigError("unknown builtin problem '" + name + "' (expected rs, four_branch or hat)");
}

}  // namespace relide
