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

#pragma once

#include <optional>
#include <string>

#include "relide/input_model.hpp"
#include "relide/limit_state.hpp"

namespace relide {

// R ~ N(mu_r, sigma_r), S ~ N(mu_s, sigma_s), independent.
ProbInput rs_input(double mu_r = 5.0, double sigma_r = 0.8, double mu_s = 2.0, double sigma_s = 0.6);
// Two independent standard normals.
ProbInput four_branch_input();
// Two independent N(0.25, 1).
ProbInput hat_input();

/// 21-variable structural-frame input: three lognormal loads, two Young's
/// moduli, eight inertias and eight areas (Gaussians truncated to [0, inf)),
/// coupled by a Gaussian copula.
///
/// Variable order: P1..P3, E4, E5, I6..I13, A14..A21. Element k uses the
/// inertia I_{6+k} and area A_{14+k}; the area/inertia pair of one element has
/// correlation 0.95, properties of different elements 0.13, the two moduli
/// 0.90, everything else 0.
ProbInput frame_input();

struct BuiltinProblem {
  std::string name;
  ProbInput input;
  // Reference noise-free failure probability, when known.
  std::optional<double> reference_pf;
};

// "rs", "four_branch" or "hat"; throws ConfigError otherwise.
BuiltinProblem builtin_problem(const std::string& name);
LimitState builtin_limit_state(const std::string& name, double gamma = 1.0);

inline constexpr double kFourBranchReferencePf = 4.51e-3;
inline constexpr double kHatReferencePf = 9.76e-4;

}  // namespace relide
