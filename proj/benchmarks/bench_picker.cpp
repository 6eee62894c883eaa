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

#include "chipvuln/picker.hpp"
#include "synthetic.hpp"

namespace chipvuln {
namespace {

void BM_PickDevices(benchmark::State& state) {
  bench::SyntheticShape shape;
  shape.phones = static_cast<int>(state.range(0));
  const KnowledgeBase kb = bench::synthetic_kb(shape);
  PickRequest req;
  req.k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(pick_devices(req, kb));
}
BENCHMARK(BM_PickDevices)->Args({50, 5})->Args({200, 5})->Args({200, 20})->Args({1000, 20})->Unit(benchmark::kMillisecond);

void BM_CoverageDelta(benchmark::State& state) {
  const KnowledgeBase kb = bench::synthetic_kb({});
  std::vector<DeviceKey> selection;
  for (const auto& [key, _] : kb.smartphones()) {
    if (selection.size() < 10) selection.push_back(key);
  }
  const DeviceKey candidate = kb.smartphones().rbegin()->first;
  for (auto _ : state) benchmark::DoNotOptimize(coverage_delta(selection, candidate, kb));
}
BENCHMARK(BM_CoverageDelta);

}  // namespace
}  // namespace chipvuln
