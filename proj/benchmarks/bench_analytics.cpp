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

#include "chipvuln/analytics.hpp"
#include "synthetic.hpp"

namespace chipvuln {
namespace {

const KnowledgeBase& shared_kb() {
  static const KnowledgeBase kb = bench::synthetic_kb({});
  return kb;
}

void BM_IntroductionReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(introduction_report(shared_kb()));
}
BENCHMARK(BM_IntroductionReport)->Unit(benchmark::kMillisecond);

void BM_UnmitigatedReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(unmitigated_report(shared_kb()));
}
BENCHMARK(BM_UnmitigatedReport)->Unit(benchmark::kMillisecond);

void BM_UpdateTimeline(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(update_timeline_report(shared_kb()));
}
BENCHMARK(BM_UpdateTimeline)->Unit(benchmark::kMillisecond);

void BM_LinkAll(benchmark::State& state) {
  bench::SyntheticShape shape;
  shape.vulnerabilities = static_cast<int>(state.range(0));
  KnowledgeBase kb = bench::synthetic_kb(shape);
  for (auto _ : state) kb.link_all();
}
BENCHMARK(BM_LinkAll)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace chipvuln
