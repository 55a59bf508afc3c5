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

#include "relide/limit_state.hpp"
#include "relide/problems.hpp"
#include "relide/reliability.hpp"

namespace {

void BM_SubsetFourBranch(benchmark::State& state) {
  relide::SubsetOptions o;
  o.n_per_level = static_cast<std::size_t>(state.range(0));
  o.retain_samples = false;
  for (auto _ : state) {
    relide::LimitState g = relide::four_branch();
    relide::RandomStream rng(1);
    benchmark::DoNotOptimize(relide::subset(g, relide::four_branch_input(), o, rng).pf);
  }
}
BENCHMARK(BM_SubsetFourBranch)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_McsHat(benchmark::State& state) {
  relide::McsOptions o;
  o.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    relide::LimitState g = relide::hat();
    relide::RandomStream rng(2);
    benchmark::DoNotOptimize(relide::mcs(g, relide::hat_input(), o, rng).pf);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McsHat)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace
