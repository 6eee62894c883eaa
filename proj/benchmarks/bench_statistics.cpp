// Copyright 2026 The chipvuln Authors.
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
#include <benchmark/benchmark.h>

#include <random>

#include "chipvuln/statistics.hpp"

namespace chipvuln {
namespace {

std::vector<SampleGroup> random_groups(int groups, int per_group) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> tenths(10, 100);
  std::vector<SampleGroup> out;
  for (int g = 0; g < groups; ++g) {
    SampleGroup s{"g" + std::to_string(g), {}};
    for (int i = 0; i < per_group; ++i) s.values.push_back(tenths(rng) / 10.0);
    out.push_back(std::move(s));
  }
  return out;
}

void BM_KruskalWallis(benchmark::State& state) {
  const auto groups = random_groups(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kruskal_wallis(groups));
  state.SetItemsProcessed(state.iterations() * 3 * state.range(0));
}
BENCHMARK(BM_KruskalWallis)->RangeMultiplier(10)->Range(10, 100000);

void BM_ChiSquareUpperTail(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi_square_upper_tail(x, static_cast<int>(state.range(0))));
    x = x < 60 ? x + 0.37 : 0.5;
  }
}
BENCHMARK(BM_ChiSquareUpperTail)->Arg(1)->Arg(2)->Arg(15);

void BM_Quantile(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) x = std::uniform_real_distribution<double>(0, 400)(rng);
  for (auto _ : state) benchmark::DoNotOptimize(quantile(xs, 0.95));
}
BENCHMARK(BM_Quantile)->RangeMultiplier(10)->Range(100, 1000000);

}  // namespace
}  // namespace chipvuln

BENCHMARK_MAIN();
