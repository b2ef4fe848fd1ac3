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

#include "sparselimit/cnf.hpp"
#include "sparselimit/ef_game.hpp"
#include "sparselimit/evaluate.hpp"
#include "sparselimit/formula.hpp"
#include "sparselimit/limits.hpp"
#include "sparselimit/sampler.hpp"
#include "sparselimit/structure.hpp"
#include "sparselimit/tree_types.hpp"

namespace sparselimit {
namespace {

Hypergraph SampleOf(const char* vocab, std::int64_t n, double beta, std::uint64_t seed) {
  auto v = PresetVocabulary(vocab);
  SampleConfig cfg;
  cfg.n = n;
  cfg.densities = DensityMap(*v, beta);
  cfg.seed = seed;
  return Sample(v, cfg);
}

void BM_Dpll3Sat(benchmark::State& state) {
  CnfSampleConfig c;
  c.n = 200;
  c.density = static_cast<double>(state.range(0)) / 10;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    c.seed = ++seed;
    CnfFormula f = SampleCnf(c);
    state.ResumeTiming();
    benchmark::DoNotOptimize(DpllSat(f));
  }
}
BENCHMARK(BM_Dpll3Sat)->Arg(20)->Arg(32)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_TreeTypeOfLocalTrees(benchmark::State& state) {
  Hypergraph h = SampleOf("graph", 20000, 1.5, 5);
  LocalTreeExtractor ex(h, static_cast<int>(state.range(0)));
  TypeRegistry reg(h.vocabulary_ptr(), 2);
  Vertex v = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg.TypeOf(ex.Extract(v)));
    v = v % 20000 + 1;
  }
}
BENCHMARK(BM_TreeTypeOfLocalTrees)->Arg(1)->Arg(2)->Arg(3);

void BM_CoreExtraction(benchmark::State& state) {
  Hypergraph h = SampleOf("graph", state.range(0), 1.0, 6);
  for (auto _ : state) benchmark::DoNotOptimize(Core(h, {}, 1));
}
BENCHMARK(BM_CoreExtraction)->Arg(30000)->Unit(benchmark::kMillisecond);

void BM_EvaluateTwoCycle(benchmark::State& state) {
  Hypergraph h = SampleOf("digraph", state.range(0), 1.0, 7);
  Formula phi = Formula::Parse("forall x. forall y. (not E(x,y) or not E(y,x))",
                               h.vocabulary_ptr());
  for (auto _ : state) benchmark::DoNotOptimize(Evaluate(h, phi));
}
BENCHMARK(BM_EvaluateTwoCycle)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_EfGameTrees(benchmark::State& state) {
  auto g = PresetVocabulary("graph");
  Hypergraph::Builder a(g), b(g);
  // Two spiders with legs of length 3: three legs against four.
  for (int legs : {3, 4}) {
    auto& builder = legs == 3 ? a : b;
    builder.AddVertex(1);
    Vertex next = 2;
    for (int l = 0; l < legs; ++l) {
      Vertex prev = 1;
      for (int d = 0; d < 3; ++d) {
        builder.AddEdge(0, {prev, next});
        prev = next++;
      }
    }
  }
  Hypergraph ha = a.Build(), hb = b.Build();
  std::vector<Vertex> root = {1};
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(EfWinner(ha, root, hb, root, k, {.distance = true}));
  }
}
BENCHMARK(BM_EfGameTrees)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EnumerateTreeTypes(benchmark::State& state) {
  auto g = PresetVocabulary("graph");
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateTreeTypes(g, 2, static_cast<int>(state.range(0)), 1 << 16));
  }
}
BENCHMARK(BM_EnumerateTreeTypes)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_TreeTypeProbabilities(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) {
    LimitEngine eng(PresetVocabulary("graph"), 2, r);
    double sum = 0;
    for (int t : eng.registry().TypesUpTo(r)) sum += Eval(eng.TreeTypeProb(r, t), {1.0});
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_TreeTypeProbabilities)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_LimitTwoCycleRadiusZero(benchmark::State& state) {
  auto di = PresetVocabulary("digraph");
  Formula phi = Formula::Parse("exists x. exists y. (E(x,y) and E(y,x))", di);
  LimitOptions opt;
  opt.edge_cap = 3;
  for (auto _ : state) benchmark::DoNotOptimize(LimitProbability(phi, 0, opt));
}
BENCHMARK(BM_LimitTwoCycleRadiusZero)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sparselimit
