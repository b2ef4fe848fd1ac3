// Copyright 2026 The sparselimit Authors
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

#include "sparselimit/sampler.hpp"
#include "sparselimit/structure.hpp"

namespace sparselimit {
namespace {

void BM_SampleGraph(benchmark::State& state) {
  auto g = PresetVocabulary("graph");
  SampleConfig cfg;
  cfg.n = state.range(0);
  cfg.densities = DensityMap(*g, 1.5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    benchmark::DoNotOptimize(Sample(g, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n);
}
BENCHMARK(BM_SampleGraph)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_SampleCnf3(benchmark::State& state) {
  auto c = PresetVocabulary("cnf3");
  SampleConfig cfg;
  cfg.n = state.range(0);
  cfg.densities = DensityMap(*c, 4.0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    benchmark::DoNotOptimize(Sample(c, cfg));
  }
}
BENCHMARK(BM_SampleCnf3)->Arg(200)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SaturatedVertices(benchmark::State& state) {
  auto g = PresetVocabulary("graph");
  SampleConfig cfg;
  cfg.n = state.range(0);
  cfg.densities = DensityMap(*g, 1.0);
  cfg.seed = 3;
  Hypergraph h = Sample(g, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(SaturatedVertices(h, 3));
}
BENCHMARK(BM_SaturatedVertices)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_IsOneSimple(benchmark::State& state) {
  auto g = PresetVocabulary("graph");
  SampleConfig cfg;
  cfg.n = state.range(0);
  cfg.densities = DensityMap(*g, 1.0);
  cfg.seed = 4;
  Hypergraph h = Sample(g, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(IsRSimple(h, 1));
}
BENCHMARK(BM_IsOneSimple)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sparselimit
