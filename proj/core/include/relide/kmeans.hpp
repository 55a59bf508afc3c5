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

#include <cstddef>
#include <vector>

#include "relide/input_model.hpp"
#include "relide/random.hpp"

namespace relide {

struct KMeansResult {
  std::vector<std::size_t> labels;
  PointMatrix centers;
  std::size_t iterations = 0;
};

// Lloyd iterations from a k-means++ seeding. Requires 1 <= k <= rows.
// Ties in the nearest-center assignment go to the lowest center index; an
// emptied cluster keeps its previous center.
KMeansResult kmeans(const PointMatrix& points, std::size_t k, RandomStream& rng, std::size_t max_iterations = 50);

}  // namespace relide
