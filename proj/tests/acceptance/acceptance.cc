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


// Acceptance suite: runs criteria 1-10 and prints one PASS/FAIL line each.
// Usage: acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sparselimit/cnf.hpp"
#include "sparselimit/ef_game.hpp"
#include "sparselimit/evaluate.hpp"
#include "sparselimit/formula.hpp"
#include "sparselimit/limits.hpp"
#include "sparselimit/montecarlo.hpp"
#include "sparselimit/structure.hpp"
#include "sparselimit/tree_types.hpp"
#include "support/logic.hpp"
#include "support/oracles.hpp"

namespace sparselimit {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int Workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

McConfig Mc(const char* vocab, double beta, std::int64_t n, int samples, std::uint64_t seed) {
  McConfig cfg;
  cfg.vocab = PresetVocabulary(vocab);
  cfg.betas = DensityMap(*cfg.vocab, beta);
  cfg.n = n;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = Workers();
  return cfg;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Root degree law against Poisson(beta).
Outcome DegreeLaw() {
  auto start = std::chrono::steady_clock::now();
  const double beta = 1.5;
  auto hist = RootDegreeHistogram(Mc("graph", beta, 50000, 10000, 101));
  double tv = TotalVariation(hist, [&](int d) { return PoissonPmfValue(beta, d); });
  double secs = Seconds(start);
  return {tv < 0.02 && secs < 120,
          Fmt("graph beta=1.5 n=50000 samples=10000: TV=%.4f (< 0.02), %.1f s (< 120 s)", tv,
              secs)};
}

// 2. Degree-0 type probability: symbolic vs e^-beta, and vs Monte Carlo.
Outcome DegreeZero() {
  LimitEngine eng(PresetVocabulary("graph"), 1, 1);
  const int zero = TypeRegistry::kRadiusZeroType;
  double worst_analytic = 0, worst_mc = 0;
  std::string mc;
  for (double beta : {0.5, 1.0, 2.0}) {
    double exact = std::exp(-beta);
    worst_analytic =
        std::max(worst_analytic, std::abs(Eval(eng.TreeTypeProb(1, zero), {beta}) - exact));
    McReport rep = TreeTypeDistribution(Mc("graph", beta, 50000, 10000, 202), 1, 1);
    const McRow* row = rep.Find("type:" + eng.registry().SignatureString(zero));
    double est = row ? row->estimate : -1;
    worst_mc = std::max(worst_mc, std::abs(est - exact));
    mc += Fmt(" %.4f@%.1f", est, beta);
  }
  return {worst_analytic <= 1e-12 && worst_mc <= 0.015,
          Fmt("analytic err=%.1e (<= 1e-12); MC n=50000 x10000 estimates%s, max err=%.4f "
              "(<= 0.015)",
              worst_analytic, mc.c_str(), worst_mc)};
}

// 3. Normalizations and the cycle-mass identity.
Outcome Normalizations() {
  double worst_types = 0, worst_classes = 0, worst_mass = 0;
  struct TypeCase {
    const char* vocab;
    int k, r;
  };
  for (TypeCase c : {TypeCase{"graph", 1, 2}, TypeCase{"graph", 2, 2}, TypeCase{"digraph", 1, 2},
                     TypeCase{"digraph", 2, 1}, TypeCase{"hypergraph3", 2, 1},
                     TypeCase{"cnf3", 1, 1}}) {
    LimitEngine eng(PresetVocabulary(c.vocab), c.k, c.r);
    for (double b : {0.3, 1.0, 2.5}) {
      std::vector<double> betas(eng.vocabulary().size(), b);
      double sum = 0;
      for (int t : eng.registry().TypesUpTo(c.r)) sum += Eval(eng.TreeTypeProb(c.r, t), betas);
      worst_types = std::max(worst_types, std::abs(sum - 1));
    }
  }
  struct CycleCase {
    const char* vocab;
    int k, r, edge_cap;
  };
  for (CycleCase c : {CycleCase{"graph", 1, 1, 3}, CycleCase{"graph", 2, 1, 3},
                      CycleCase{"digraph", 2, 0, 3}, CycleCase{"digraph-loops", 2, 0, 2}}) {
    LimitEngine eng(PresetVocabulary(c.vocab), c.k, c.r, {.edge_cap = c.edge_cap});
    for (double b : {0.5, 2.0}) {
      std::vector<double> betas(eng.vocabulary().size(), b);
      double sum = 0;
      for (const auto& o : eng.Classes()) sum += Eval(eng.ClassProb(o), betas);
      worst_classes = std::max(worst_classes, std::abs(sum - 1));
    }
  }
  int shapes = 0;
  for (CycleCase c : {CycleCase{"graph", 1, 1, -1}, CycleCase{"graph", 2, 1, 5},
                      CycleCase{"digraph", 2, 1, 4}, CycleCase{"hypergraph3", 1, 1, 3}}) {
    LimitEngine eng(PresetVocabulary(c.vocab), c.k, c.r, {.edge_cap = c.edge_cap});
    for (double b : {0.4, 1.3}) {
      std::vector<double> betas(eng.vocabulary().size(), b);
      std::map<std::vector<int>, double> mass, expected;
      for (const auto& cc : eng.Cycles()) {
        std::vector<int> zero(cc.colors.size(), 0);
        std::int64_t aut = 1;
        std::vector<int> key = eng.words().KeyOf(cc.cycle, zero, &aut);
        mass[key] += Eval(eng.Gamma(cc), betas);
        expected[key] = std::pow(b, cc.cycle.num_edges()) / static_cast<double>(aut);
      }
      for (const auto& [key, m] : mass) {
        worst_mass = std::max(worst_mass, std::abs(m - expected[key]));
        ++shapes;
      }
    }
  }
  return {worst_types <= 1e-9 && worst_classes <= 1e-9 && worst_mass <= 1e-9,
          Fmt("max |sum Pr[k,t] - 1|=%.1e, max |sum class_prob - 1|=%.1e, max cycle-mass "
              "error=%.1e over %d shape checks (all <= 1e-9)",
              worst_types, worst_classes, worst_mass, shapes)};
}

// 4. Triangle components are Poisson(1/6).
Outcome Triangles() {
  McReport rep = CycleCounts(Mc("graph", 1.0, 30000, 20000, 404), 1, 1);
  const McRow *mean = nullptr, *disp = nullptr;
  for (const auto& row : rep.rows) {
    if (row.statistic.rfind("shape-mean:L3:", 0) == 0) mean = &row;
    if (row.statistic.rfind("shape-dispersion:L3:", 0) == 0) disp = &row;
  }
  if (!mean || !disp) return {false, "no triangle rows in the cycle-count report"};
  double rel = std::abs(mean->estimate - 1.0 / 6) / (1.0 / 6);
  return {rel <= 0.10 && disp->estimate >= 0.9 && disp->estimate <= 1.1,
          Fmt("graph beta=1 n=30000 x20000: mean=%.4f (1/6 +- 10%%, rel err %.3f), "
              "dispersion=%.3f (in [0.9, 1.1])",
              mean->estimate, rel, disp->estimate)};
}

// 5. Almost all samples are 1-simple.
Outcome Simplicity() {
  McReport rep = SimpleFraction(Mc("graph", 1.0, 100000, 1000, 505), 1);
  double f = rep.rows.at(0).estimate;
  return {f >= 0.99, Fmt("graph beta=1 n=100000 x1000: 1-simple fraction=%.4f (>= 0.99)", f)};
}

// Parent links and children of a binary-relation tree rooted at root.
struct TreeShape {
  std::map<Vertex, Vertex> parent;
  std::map<Vertex, std::vector<EdgeId>> child_edges;
};

TreeShape Shape(const Hypergraph& h, Vertex root) {
  TreeShape s;
  std::vector<Vertex> queue = {root};
  std::set<Vertex> seen = {root};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Vertex u = queue[i];
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      auto t = h.EdgeTuple(e);
      if (t[0] != u && t[1] != u) continue;
      Vertex w = t[0] == u ? t[1] : t[0];
      if (seen.insert(w).second) {
        s.parent[w] = u;
        s.child_edges[u].push_back(e);
        queue.push_back(w);
      }
    }
  }
  return s;
}

// Copy of the tree with one child branch duplicated.
Hypergraph Padded(const Hypergraph& h, Vertex root, std::mt19937_64& rng) {
  TreeShape s = Shape(h, root);
  if (s.parent.empty()) return h;
  auto it = s.parent.begin();
  std::advance(it, static_cast<long>(rng() % s.parent.size()));
  Vertex c = it->first;
  std::set<Vertex> branch = {c};
  std::vector<Vertex> queue = {c};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (EdgeId e : s.child_edges[queue[i]]) {
      auto t = h.EdgeTuple(e);
      Vertex w = t[0] == queue[i] ? t[1] : t[0];
      if (branch.insert(w).second) queue.push_back(w);
    }
  }
  if (h.num_vertices() + static_cast<int>(branch.size()) > 12) return h;
  Vertex next = 1;
  for (Vertex v : h.vertices()) next = std::max(next, v + 1);
  std::map<Vertex, Vertex> copy;
  for (Vertex v : branch) copy[v] = next++;
  copy[s.parent[c]] = s.parent[c];
  Hypergraph::Builder b(h.vocabulary_ptr());
  for (Vertex v : h.vertices()) b.AddVertex(v);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto t = h.EdgeTuple(e);
    b.AddEdge(h.EdgeRelation(e), t);
    if (copy.count(t[0]) && copy.count(t[1]) && (branch.count(t[0]) || branch.count(t[1]))) {
      b.AddEdge(h.EdgeRelation(e), {copy[t[0]], copy[t[1]]});
    }
  }
  return b.Build();
}

Hypergraph Relabeled(const Hypergraph& h, Vertex& root, std::mt19937_64& rng) {
  std::vector<Vertex> ids(h.vertices().begin(), h.vertices().end());
  std::vector<Vertex> perm = ids;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<Vertex, Vertex> m;
  for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]] = perm[i];
  Hypergraph::Builder b(h.vocabulary_ptr());
  for (Vertex v : ids) b.AddVertex(v);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto t = h.EdgeTuple(e);
    b.AddEdge(h.EdgeRelation(e), {m[t[0]], m[t[1]]});
  }
  root = m[root];
  return b.Build();
}

// 6. Equal rank-k tree types give Duplicator wins; batteries agree then.
Outcome EfConsistency() {
  std::mt19937_64 rng(606);
  int pairs = 0, equal = 0, violations = 0, duplicator = 0, battery_checks = 0,
      battery_violations = 0;
  for (const char* name : {"graph", "digraph"}) {
    VocabularyPtr vocab = PresetVocabulary(name);
    std::vector<std::vector<Formula>> battery(4);
    for (int k = 1; k <= 3; ++k) {
      for (const auto& s : oracle::SentenceBattery(*vocab, k, {"x0"}, 12, 606 + k)) {
        battery[k].push_back(Formula::Parse(s, vocab));
      }
    }
    std::vector<std::unique_ptr<TypeRegistry>> regs;
    regs.push_back(nullptr);
    for (int k = 1; k <= 3; ++k) regs.push_back(std::make_unique<TypeRegistry>(vocab, k));
    for (int i = 0; i < 100; ++i, ++pairs) {
      int k = 1 + i % 3;
      Hypergraph a = oracle::RandomTree(vocab, 12, rng);
      Vertex ra = a.VertexAt(static_cast<int>(rng() % a.num_vertices()));
      Hypergraph b;
      Vertex rb = ra;
      switch (i % 4) {
        case 0: b = Relabeled(a, rb, rng); break;
        case 1: b = Padded(a, ra, rng); break;
        case 2: b = Relabeled(Padded(Padded(a, ra, rng), ra, rng), rb, rng); break;
        default:
          b = oracle::RandomTree(vocab, 12, rng);
          rb = b.VertexAt(static_cast<int>(rng() % b.num_vertices()));
      }
      bool same = regs[k]->TypeOf({a, ra}) == regs[k]->TypeOf({b, rb});
      std::vector<Vertex> pa = {ra}, pb = {rb};
      bool dup = EfWinner(a, pa, b, pb, k, {.distance = true}) == Winner::kDuplicator;
      equal += same;
      violations += same && !dup;
      if (!dup) continue;
      ++duplicator;
      for (const auto& phi : battery[k]) {
        ++battery_checks;
        battery_violations += Evaluate(a, phi, {{"x0", ra}}) != Evaluate(b, phi, {{"x0", rb}});
      }
    }
  }
  return {violations == 0 && battery_violations == 0 && equal > 0,
          Fmt("%d pairs (<= 12 vertices, k <= 3): %d equal types, %d type=>Duplicator "
              "violations; %d Duplicator pairs, %d battery checks, %d disagreements",
              pairs, equal, violations, duplicator, battery_checks, battery_violations)};
}

// 7. Digraph 2-cycle sentence end to end.
Outcome TwoCycle() {
  VocabularyPtr vocab = PresetVocabulary("digraph");
  Formula phi = Formula::Parse("exists x. exists y. (E(x,y) and E(y,x))", vocab);
  LimitResult res = LimitProbability(phi, 1);
  double worst = 0;
  for (int i = 0; i <= 30; ++i) {
    double b = 0.5 + 0.05 * i;
    worst = std::max(worst, std::abs(Eval(res.value, {b}) - (1 - std::exp(-b * b / 2))));
  }
  double worst_mc = 0;
  std::string mc;
  for (double b : {0.5, 1.0, 1.5, 2.0}) {
    McReport rep = SentenceProbability(Mc("digraph", b, 20000, 6000, 707), phi);
    double est = rep.rows.at(0).estimate;
    worst_mc = std::max(worst_mc, std::abs(est - (1 - std::exp(-b * b / 2))));
    mc += Fmt(" %.4f@%.1f", est, b);
  }
  return {worst <= 1e-6 && worst_mc <= 0.02,
          Fmt("r=%d: symbolic max err on [0.5,2]=%.1e (<= 1e-6); MC n=20000 x6000%s, max "
              "err=%.4f (<= 0.02)",
              res.r, worst, mc.c_str(), worst_mc)};
}

// 8. Random 3-SAT phase transition.
Outcome SatTransition() {
  auto start = std::chrono::steady_clock::now();
  ScanConfig cfg;
  cfg.l = 3;
  for (int i = 1; i <= 12; ++i) cfg.betas.push_back(0.5 * i);
  cfg.ns = {200};
  cfg.samples = 400;
  cfg.seed = 808;
  cfg.workers = Workers();
  auto cells = SatScan(cfg);
  double secs = Seconds(start);
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    double slack = 2 * std::hypot(cells[i].stderr_, cells[i + 1].stderr_);
    monotone = monotone && cells[i + 1].p <= cells[i].p + slack;
  }
  double above = 0, below = 0;
  for (const auto& c : cells) {
    if (c.p >= 0.5) above = c.beta;
  }
  for (const auto& c : cells) {
    if (c.p < 0.5) {
      below = c.beta;
      break;
    }
  }
  bool crossing = above >= 2.5 && below <= 4.0 && below > above;
  bool ok = cells.front().p > 0.95 && cells.back().p < 0.05 && monotone && crossing &&
            secs < 600;
  std::string curve;
  for (const auto& c : cells) curve += Fmt(" %.2f", c.p);
  return {ok, Fmt("n=200 x400: Pr(sat) at beta=0.5..6:%s; crosses 0.5 in (%.1f, %.1f]; "
                  "%.0f s (< 600 s)",
                  curve.c_str(), above, below, secs)};
}

// 9. The FO unsat certificate is absent although formulas are unsat.
Outcome CertificateDecay() {
  ScanConfig cfg;
  cfg.betas = {5.0};
  cfg.ns = {100};
  cfg.samples = 1000;
  cfg.seed = 909;
  cfg.workers = Workers();
  ScanCell c = CertificateScan(CertificateSentence(3), cfg, true).at(0);
  double unsat = static_cast<double>(c.unsat) / c.samples;
  return {c.hits == 0 && unsat > 0.9,
          Fmt("n=100 beta=5 x1000: certificate seen %d times (== 0); DPLL unsat %.3f (> 0.9)",
              c.hits, unsat)};
}

// 10. Oracle equivalences.
Outcome Oracles() {
  std::mt19937_64 rng(1010);
  int dpll_bad = 0;
  for (int i = 0; i < 500; ++i) {
    int l = 2 + static_cast<int>(rng() % 3);
    int n = l + static_cast<int>(rng() % (13 - l));
    int m = static_cast<int>(rng() % (6 * n));
    std::vector<std::vector<int>> raw;
    std::uniform_int_distribution<int> var(1, n);
    for (int j = 0; j < m; ++j) {
      std::vector<int> c;
      while (static_cast<int>(c.size()) < l) {
        int v = var(rng);
        if (std::none_of(c.begin(), c.end(), [&](int x) { return std::abs(x) == v; })) {
          c.push_back(rng() % 2 ? v : -v);
        }
      }
      raw.push_back(c);
    }
    CnfFormula f(n, l, std::vector<Clause>(raw.begin(), raw.end()));
    SatResult r = DpllSat(f);
    bool truth = oracle::SatByTruthTable(raw, n);
    dpll_bad += (r.outcome == SatOutcome::kSat) != truth ||
                (truth && !f.Satisfies(r.assignment));
  }
  int corpus = 0, prune_bad = 0;
  for (const char* name : {"graph", "digraph-loops", "hypergraph3", "cnf2", "cnf3"}) {
    auto vocab = PresetVocabulary(name);
    for (int trial = 0; trial < 300; ++trial) {
      Hypergraph h = oracle::RandomConnected(vocab, 7, rng);
      if (h.num_edges() > 16) continue;
      std::vector<Vertex> marks;
      for (Vertex v : h.vertices()) {
        if (rng() % 4 == 0) marks.push_back(v);
      }
      ++corpus;
      prune_bad += Center(h) != oracle::CenterByEnumeration(h, {});
      prune_bad += Center(h, marks) != oracle::CenterByEnumeration(h, marks);
      prune_bad += ClassifyComponent(h).saturated != oracle::IsSaturated(h);
    }
  }
  int space_checks = 0, space_bad = 0;
  for (const char* name :
       {"graph", "digraph", "digraph-loops", "hypergraph3", "hypergraph4", "cnf2", "cnf3"}) {
    auto v = PresetVocabulary(name);
    for (int r = 0; r < v->size(); ++r) {
      for (int n = 1; n <= 8; ++n) {
        ++space_checks;
        space_bad += EdgeSpaceSize(v->Patterns(r), n) !=
                     oracle::EdgeSpaceByEnumeration(v->relation(r), n);
      }
    }
  }
  return {dpll_bad == 0 && prune_bad == 0 && space_bad == 0,
          Fmt("DPLL vs truth table: %d/500 mismatches; center/saturation vs brute force: %d "
              "mismatches on %d hypergraphs; |E_R[n]| vs enumeration: %d/%d mismatches",
              dpll_bad, prune_bad, corpus, space_bad, space_checks)};
}

}  // namespace
}  // namespace sparselimit

int main(int argc, char** argv) {
  using namespace sparselimit;
  const std::vector<std::function<Outcome()>> criteria = {
      DegreeLaw, DegreeZero,       Normalizations,   Triangles, Simplicity,
      EfConsistency, TwoCycle, SatTransition, CertificateDecay, Oracles};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    int c = std::atoi(argv[i]);
    if (c < 1 || c > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1-10 ...]\n", argv[0]);
      return 2;
    }
    selected.insert(c);
  }
  int failed = 0, run = 0;
  for (int c = 1; c <= 10; ++c) {
    if (!selected.empty() && !selected.count(c)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[c - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    ++run;
    failed += !o.pass;
    std::printf("criterion %2d: %s  %s  [%.1f s]\n", c, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), Seconds(start));
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%d passed\n", run - failed, run);
  return failed == 0 ? 0 : 1;
}
