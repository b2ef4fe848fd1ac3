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


#include "sparselimit/limits.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "sparselimit/errors.hpp"
#include "sparselimit/structure.hpp"

namespace sparselimit {
namespace {

double Ev(const Expr& e, double beta) { return Eval(e, {beta}); }

// Vertex permutations (as index maps) preserving every edge, by brute force.
std::vector<std::vector<int>> BruteAutomorphisms(const Hypergraph& h) {
  int n = h.num_vertices();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (EdgeId e = 0; e < h.num_edges() && ok; ++e) {
      std::vector<Vertex> t;
      for (Vertex v : h.EdgeTuple(e)) t.push_back(h.VertexAt(p[h.IndexOrThrow(v)]));
      ok = h.Holds(h.EdgeRelation(e), t);
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int ColoredStabilizer(const std::vector<std::vector<int>>& auts, const std::vector<int>& colors) {
  int count = 0;
  for (const auto& p : auts) {
    bool ok = true;
    for (std::size_t i = 0; i < colors.size() && ok; ++i) ok = colors[p[i]] == colors[i];
    count += ok;
  }
  return count;
}

// Number of colorings up to automorphism, by brute force.
int ColoringOrbits(const std::vector<std::vector<int>>& auts, int nv, int num_colors) {
  std::set<std::vector<int>> seen;
  std::vector<int> c(nv, 0);
  while (true) {
    std::vector<int> best = c;
    for (const auto& p : auts) {
      std::vector<int> img(nv);
      for (int i = 0; i < nv; ++i) img[p[i]] = c[i];
      best = std::min(best, img);
    }
    seen.insert(best);
    int i = 0;
    while (i < nv && ++c[i] == num_colors) c[i++] = 0;
    if (i == nv) break;
  }
  return static_cast<int>(seen.size());
}

std::vector<int> ShapeKey(const LimitEngine& eng, const CycleClass& c) {
  return eng.words().KeyOf(c.cycle, std::vector<int>(c.colors.size(), 0));
}

int PatternWithChildren(TypeRegistry& reg, int relation, std::vector<int> colors) {
  return reg.InternPattern(relation, std::move(colors));
}

TEST(LimitsTest, MuExamples) {
  LimitEngine graph(PresetVocabulary("graph"), 1, 1);
  int eps = PatternWithChildren(graph.registry(), 0, {0, 1});
  EXPECT_NEAR(Ev(graph.Mu(1, eps), 1.7), 1.7, 1e-12);

  LimitEngine hyper(PresetVocabulary("hypergraph3"), 1, 1);
  int h3 = PatternWithChildren(hyper.registry(), 0, {0, 1, 1});
  EXPECT_EQ(hyper.registry().pattern(h3).aut, 2);
  EXPECT_NEAR(Ev(hyper.Mu(1, h3), 1.7), 0.85, 1e-12);

  LimitEngine di(PresetVocabulary("digraph"), 1, 1);
  for (const auto& colors : {std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
    int p = PatternWithChildren(di.registry(), 0, colors);
    EXPECT_NEAR(Ev(di.Mu(1, p), 0.6), 0.6, 1e-12);
    EXPECT_EQ(di.Mu(1, p)->family, Family::kM);
  }
}

TEST(LimitsTest, TreeTypeProbabilityExamples) {
  LimitEngine k1(PresetVocabulary("graph"), 1, 1);
  auto types = k1.registry().TypesUpTo(1);
  ASSERT_EQ(types.size(), 2u);
  // Type 0 is the isolated vertex; the other has degree >= 1.
  EXPECT_NEAR(Ev(k1.TreeTypeProb(1, 0), 1.0), 0.3678794, 1e-7);
  EXPECT_NEAR(Ev(k1.TreeTypeProb(1, types[1]), 2.0), 1 - std::exp(-2.0), 1e-12);
  EXPECT_EQ(k1.TreeTypeProb(1, 0)->family, Family::kLambda);
  EXPECT_EQ(k1.TreeTypeProb(0, 0), sym::One());

  LimitEngine k2(PresetVocabulary("graph"), 2, 1);
  int eps = PatternWithChildren(k2.registry(), 0, {0, 1});
  int deg1 = k2.registry().InternType({{eps, 1}});
  for (double b : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(Ev(k2.TreeTypeProb(1, deg1), b), b * std::exp(-b), 1e-12);
  }
}

TEST(LimitsTest, TreeTypeProbabilityRefusesPartialRegistry) {
  LimitEngine eng(PresetVocabulary("graph"), 1, 1);
  EXPECT_THROW(
      {
        try {
          eng.TreeTypeProb(2, 0);
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::kPartialRegistry);
          throw;
        }
      },
      Error);
}

TEST(LimitsTest, TreeTypeNormalization) {
  struct Case {
    const char* vocab;
    int k;
    int r;
  };
  for (Case c : {Case{"graph", 1, 1}, Case{"graph", 1, 2}, Case{"graph", 2, 1},
                 Case{"graph", 2, 2}, Case{"digraph", 1, 2}, Case{"digraph", 2, 1},
                 Case{"hypergraph3", 1, 2}, Case{"hypergraph3", 2, 1}, Case{"cnf3", 1, 1}}) {
    LimitEngine eng(PresetVocabulary(c.vocab), c.k, c.r);
    for (int rho = 0; rho <= c.r; ++rho) {
      for (double b : {0.3, 1.0, 2.5}) {
        std::vector<double> betas(eng.vocabulary().size(), b);
        double sum = 0;
        for (int t : eng.registry().TypesUpTo(rho)) sum += Eval(eng.TreeTypeProb(rho, t), betas);
        EXPECT_NEAR(sum, 1.0, 1e-9) << c.vocab << " k=" << c.k << " rho=" << rho << " b=" << b;
      }
    }
  }
}

TEST(LimitsTest, GraphCycleShapes) {
  LimitEngine eng(PresetVocabulary("graph"), 1, 1);
  std::vector<int> lengths;
  for (const auto& w : eng.ShapeWords()) lengths.push_back(static_cast<int>(w.size()));
  EXPECT_EQ(lengths, (std::vector<int>{3, 4, 5, 6, 7}));

  LimitEngine r2(PresetVocabulary("graph"), 1, 2, {.edge_cap = 20});
  EXPECT_EQ(r2.ShapeWords().size(), 9u);  // C3 .. C11
}

// Oriented cycles up to rotation and reflection, by brute force on bit
// strings: bit i set means edge i points backwards.
int OrientedCycleCount(int len) {
  std::set<std::vector<int>> seen;
  for (int mask = 0; mask < (1 << len); ++mask) {
    std::vector<int> best;
    for (int refl = 0; refl < 2; ++refl) {
      for (int s = 0; s < len; ++s) {
        std::vector<int> img(len);
        for (int i = 0; i < len; ++i) {
          int bit = (mask >> i) & 1;
          int j = refl ? ((s - i - 1) % len + len) % len : (i + s) % len;
          img[j] = refl ? 1 - bit : bit;
        }
        if (best.empty() || img < best) best = img;
      }
    }
    seen.insert(best);
  }
  return static_cast<int>(seen.size());
}

TEST(LimitsTest, DigraphCycleShapesMatchBruteForce) {
  LimitEngine eng(PresetVocabulary("digraph"), 1, 1);
  std::map<int, int> by_len;
  for (const auto& w : eng.ShapeWords()) ++by_len[static_cast<int>(w.size())];
  EXPECT_EQ(by_len[2], 1);
  for (int len = 3; len <= 7; ++len) EXPECT_EQ(by_len[len], OrientedCycleCount(len)) << len;
  EXPECT_EQ(by_len.count(8), 0u);
}

TEST(LimitsTest, TriangleColorings) {
  LimitEngine eng(PresetVocabulary("graph"), 1, 1);
  int triangles = 0;
  for (const auto& c : eng.Cycles()) triangles += c.cycle.num_edges() == 3;
  EXPECT_EQ(triangles, 4);
}

TEST(LimitsTest, CycleClassesMatchBruteForceOrbits) {
  struct Case {
    const char* vocab;
    int k;
    int r;
    int edge_cap;
  };
  for (Case c : {Case{"graph", 1, 1, -1}, Case{"digraph", 2, 1, 4}, Case{"hypergraph3", 1, 1, 3},
                 Case{"graph", 2, 1, 5}}) {
    LimitEngine eng(PresetVocabulary(c.vocab), c.k, c.r, {.edge_cap = c.edge_cap});
    int nt = static_cast<int>(eng.registry().TypesUpTo(c.r).size());
    std::map<std::vector<int>, std::vector<const CycleClass*>> shapes;
    for (const auto& cc : eng.Cycles()) shapes[ShapeKey(eng, cc)].push_back(&cc);
    for (const auto& [key, members] : shapes) {
      auto auts = BruteAutomorphisms(members[0]->cycle);
      EXPECT_EQ(static_cast<int>(members.size()),
                ColoringOrbits(auts, members[0]->cycle.num_vertices(), nt))
          << c.vocab;
      for (const CycleClass* m : members) {
        EXPECT_EQ(m->aut, ColoredStabilizer(BruteAutomorphisms(m->cycle), m->colors)) << c.vocab;
        EXPECT_LE(Diameter(m->cycle), 2 * c.r + 1);
      }
    }
  }
}

TEST(LimitsTest, CycleMassIdentity) {
  struct Case {
    const char* vocab;
    int k;
    int r;
    int edge_cap;
  };
  for (Case c : {Case{"graph", 1, 1, -1}, Case{"digraph", 2, 1, 4}, Case{"hypergraph3", 1, 1, 3},
                 Case{"graph", 2, 1, 5}}) {
    LimitEngine eng(PresetVocabulary(c.vocab), c.k, c.r, {.edge_cap = c.edge_cap});
    for (double b : {0.4, 1.3}) {
      std::map<std::vector<int>, double> mass;
      std::map<std::vector<int>, double> expected;
      for (const auto& cc : eng.Cycles()) {
        std::vector<int> key = ShapeKey(eng, cc);
        mass[key] += Ev(eng.Gamma(cc), b);
        std::int64_t aut = 1;
        eng.words().KeyOf(cc.cycle, std::vector<int>(cc.colors.size(), 0), &aut);
        expected[key] = std::pow(b, cc.cycle.num_edges()) / static_cast<double>(aut);
      }
      for (const auto& [key, m] : mass) EXPECT_NEAR(m, expected[key], 1e-9) << c.vocab;
    }
  }
}

TEST(LimitsTest, DigraphTwoCycleGamma) {
  LimitEngine eng(PresetVocabulary("digraph"), 1, 0);
  ASSERT_EQ(eng.Cycles().size(), 3u);  // 2-cycle, cyclic and transitive triangles
  const CycleClass* two = nullptr;
  for (const auto& c : eng.Cycles()) {
    if (c.cycle.num_edges() == 2) two = &c;
  }
  ASSERT_NE(two, nullptr);
  EXPECT_EQ(two->aut, 2);
  EXPECT_NEAR(Ev(eng.Gamma(*two), 1.5), 1.125, 1e-12);
  EXPECT_EQ(eng.Gamma(*two)->family, Family::kGamma);
}

TEST(LimitsTest, LoopEdgesAreCycles) {
  LimitEngine eng(PresetVocabulary("digraph-loops"), 1, 0, {.edge_cap = 2});
  int loops = 0;
  for (const auto& c : eng.Cycles()) {
    if (c.loop) {
      ++loops;
      EXPECT_EQ(c.aut, 1);
      EXPECT_NEAR(Ev(eng.Gamma(c), 0.7), 0.7, 1e-12);
    }
  }
  EXPECT_EQ(loops, 1);
}

TEST(LimitsTest, ClassNormalization) {
  struct Case {
    const char* vocab;
    int k;
    int r;
    int edge_cap;
  };
  for (Case c : {Case{"graph", 1, 1, 3}, Case{"graph", 2, 1, 3}, Case{"digraph", 2, 0, 3},
                 Case{"digraph-loops", 2, 0, 2}}) {
    LimitEngine eng(PresetVocabulary(c.vocab), c.k, c.r, {.edge_cap = c.edge_cap});
    auto classes = eng.Classes();
    double cycles = static_cast<double>(eng.Cycles().size());
    EXPECT_EQ(static_cast<double>(classes.size()), std::pow(c.k + 1, cycles));
    for (double b : {0.5, 2.0}) {
      double sum = 0;
      for (const auto& o : classes) {
        Expr p = eng.ClassProb(o);
        double v = Ev(p, b);
        EXPECT_GE(v, 0.0);
        sum += v;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9) << c.vocab;
    }
  }
}

TEST(LimitsTest, AllZeroClassProbability) {
  LimitEngine eng(PresetVocabulary("graph"), 1, 1, {.edge_cap = 3});
  AgreeClass zero{std::vector<int>(eng.Cycles().size(), 0)};
  double expected = 1;
  for (const auto& c : eng.Cycles()) expected *= std::exp(-Ev(eng.Gamma(c), 1.2));
  EXPECT_NEAR(Ev(eng.ClassProb(zero), 1.2), expected, 1e-12);
  EXPECT_NEAR(expected, std::exp(-std::pow(1.2, 3) / 6), 1e-12);
}

TEST(LimitsTest, PlantRichAllZeroClass) {
  LimitEngine eng(PresetVocabulary("graph"), 1, 1, {.edge_cap = 3});
  AgreeClass zero{std::vector<int>(eng.Cycles().size(), 0)};
  Hypergraph h = eng.PlantRich(zero);
  // Three copies each of the isolated vertex and the single edge.
  EXPECT_EQ(h.num_vertices(), 9);
  EXPECT_EQ(h.num_edges(), 3);
  EXPECT_TRUE(IsRich(h, eng.registry(), 1));
}

TEST(LimitsTest, PlantRichWithTriangle) {
  LimitEngine eng(PresetVocabulary("graph"), 1, 1, {.edge_cap = 3});
  int full = -1;
  for (const auto& c : eng.Cycles()) {
    if (std::all_of(c.colors.begin(), c.colors.end(), [](int t) { return t != 0; })) full = c.id;
  }
  ASSERT_GE(full, 0);
  AgreeClass o{std::vector<int>(eng.Cycles().size(), 0)};
  o.counts[full] = 1;
  Hypergraph h = eng.PlantRich(o);
  EXPECT_EQ(ConnectedComponents(Core(h, {}, 1)).size(), 1u);
  EXPECT_EQ(eng.ClassOf(h).counts, o.counts);
}

TEST(LimitsTest, EveryPlantIsRichAndInItsClass) {
  LimitEngine eng(PresetVocabulary("digraph"), 2, 0, {.edge_cap = 3});
  for (const auto& o : eng.Classes()) EXPECT_NO_THROW(eng.PlantRich(o));
}

TEST(LimitsTest, RichnessNegative) {
  auto g = PresetVocabulary("graph");
  TypeRegistry reg(g, 1);
  reg.Enumerate(1, 100);
  Hypergraph::Builder b(g);
  b.AddEdge(0, {1, 2});
  EXPECT_FALSE(IsRich(b.Build(), reg, 1));  // no isolated vertex
  Hypergraph::Builder many(g);
  for (Vertex v = 1; v <= 40; v += 2) many.AddEdge(0, {v, v + 1});
  many.AddVertexRange(100, 110);
  EXPECT_TRUE(IsRich(many.Build(), reg, 1));
}

TEST(LimitsTest, ClassOfCountsTriangles) {
  LimitEngine eng(PresetVocabulary("graph"), 2, 1, {.edge_cap = 4});
  Hypergraph::Builder b(PresetVocabulary("graph"));
  for (Vertex base : {0, 10, 20}) {
    b.AddEdge(0, {base + 1, base + 2});
    b.AddEdge(0, {base + 2, base + 3});
    b.AddEdge(0, {base + 3, base + 1});
  }
  b.AddEdge(0, {30, 31});
  AgreeClass o = eng.ClassOf(b.Build());
  int total = std::accumulate(o.counts.begin(), o.counts.end(), 0);
  EXPECT_EQ(total, 2);  // three bare triangles, capped at k
}

TEST(LimitsTest, SimpleSentenceLimits) {
  auto g = PresetVocabulary("graph");
  LimitResult one = LimitProbability(Formula::Parse("exists x. x = x", g));
  EXPECT_EQ(one.k, 1);
  EXPECT_EQ(one.r, 1);
  EXPECT_NEAR(Ev(one.value, 0.7), 1.0, 1e-12);
  LimitResult zero = LimitProbability(Formula::Parse("exists x. E(x,x)", g));
  EXPECT_NEAR(Ev(zero.value, 0.7), 0.0, 1e-12);
  LimitResult t = LimitProbability(Formula::Parse("true", g));
  EXPECT_EQ(t.k, 0);
  EXPECT_NEAR(Ev(t.value, 1.0), 1.0, 1e-12);
}

TEST(LimitsTest, DefaultRadius) {
  EXPECT_EQ(DefaultRadius(1), 1);
  EXPECT_EQ(DefaultRadius(2), 4);
  EXPECT_EQ(DefaultRadius(3), 13);
}

TEST(LimitsTest, LumpedMatchesExplicit) {
  auto di = PresetVocabulary("digraph");
  LimitOptions opt{.edge_cap = 3};
  for (const char* text : {"exists x. exists y. (E(x,y) and E(y,x))",
                           "exists x. exists y. (E(x,y) and not E(y,x))",
                           "forall x. exists y. E(x,y)", "exists x. forall y. not E(x,y)",
                           "exists x. exists y. (not x = y and E(x,y))"}) {
    Formula phi = Formula::Parse(text, di);
    LimitResult lumped = LimitProbability(phi, 0, opt);
    LimitResult expl = ExplicitLimitProbability(phi, 0, opt);
    for (double b : {0.5, 1.0, 2.0}) {
      EXPECT_NEAR(Ev(lumped.value, b), Ev(expl.value, b), 1e-9) << text << " b=" << b;
    }
    double total = 0;
    for (const auto& t : lumped.terms) total += Ev(t.prob, 1.3);
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
  // On graphs the lumped ring recursion is the only path for L >= 3.
  auto g = PresetVocabulary("graph");
  Formula tri = Formula::Parse("exists x. exists y. E(x,y)", g);
  LimitResult lumped = LimitProbability(tri, 0, opt);
  LimitResult expl = ExplicitLimitProbability(tri, 0, opt);
  EXPECT_NEAR(Ev(lumped.value, 1.1), Ev(expl.value, 1.1), 1e-9);
  EXPECT_NEAR(Ev(lumped.value, 1.1), 1 - std::exp(-std::pow(1.1, 3) / 6), 1e-9);
}

TEST(LimitsTest, DigraphTwoCycleLimit) {
  auto di = PresetVocabulary("digraph");
  Formula phi = Formula::Parse("exists x. exists y. (E(x,y) and E(y,x))", di);
  LimitResult res = LimitProbability(phi, 1);
  EXPECT_EQ(res.k, 2);
  EXPECT_EQ(res.r, 1);
  EXPECT_TRUE(res.radius_overridden);
  EXPECT_NEAR(Ev(res.value, 1.0), 0.39347, 1e-5);
  for (double b = 0.5; b <= 2.0; b += 0.25) {
    EXPECT_NEAR(Ev(res.value, b), 1 - std::exp(-b * b / 2), 1e-9) << b;
  }
}

TEST(LimitsTest, RejectsOpenFormulas) {
  auto g = PresetVocabulary("graph");
  EXPECT_THROW(LimitProbability(Formula::Parse("E(x,y)", g)), Error);
}

TEST(LimitsTest, CapsAreHardFailures) {
  auto g = PresetVocabulary("graph");
  try {
    LimitEngine eng(g, 2, 4, {.type_cap = 50});
    FAIL() << "expected CapExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapExceeded);
  }
  LimitEngine eng(g, 1, 1);
  EXPECT_THROW(eng.Classes(), Error);  // 2^49 classes
}

}  // namespace
}  // namespace sparselimit
