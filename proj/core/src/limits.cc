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

#include <algorithm>
#include <functional>
#include <set>

#include "sparselimit/errors.hpp"
#include "sparselimit/evaluate.hpp"
#include "sparselimit/rank_types.hpp"
#include "sparselimit/structure.hpp"

namespace sparselimit {

namespace {

std::int64_t Factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Advances a mixed-radix counter; false after the last value.
bool NextTuple(std::vector<int>& digits, int base) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

double PowSize(double base, int exp) {
  double p = 1;
  for (int i = 0; i < exp; ++i) p *= base;
  return p;
}

[[noreturn]] void Cap(const std::string& what, std::size_t cap) {
  throw Error(ErrorKind::kCapExceeded, what + " exceeds the cap of " + std::to_string(cap));
}

}  // namespace

int DefaultRadius(int k) {
  int p = 1;
  for (int i = 0; i < k; ++i) p *= 3;
  return (p - 1) / 2;
}

LimitEngine::LimitEngine(VocabularyPtr vocab, int k, int r, LimitOptions options)
    : vocab_(vocab),
      k_(k),
      r_(r),
      edge_cap_(options.edge_cap < 0 ? 4 * r + 4 : options.edge_cap),
      options_(options),
      registry_(std::make_shared<TypeRegistry>(vocab, k)),
      words_(vocab) {
  if (r < 0) throw Error(ErrorKind::kInvalidArgument, "radius must be nonnegative");
  if (!registry_->Enumerate(r, options.type_cap)) {
    Cap("tree types of radius <= " + std::to_string(r) + " for k=" + std::to_string(k),
        options.type_cap);
  }
}

Expr LimitEngine::Mu(int rho, int pattern) {
  auto key = std::make_pair(rho, pattern);
  if (auto it = mu_memo_.find(key); it != mu_memo_.end()) return it->second;
  Pattern p = registry_->pattern(pattern);
  if (p.radius > rho) throw Error(ErrorKind::kInvalidArgument, "pattern deeper than the radius");
  std::vector<Expr> lambdas;
  for (int c : p.colors) {
    if (c != kRootColor) lambdas.push_back(TreeTypeProb(rho - 1, c - 1));
  }
  Expr e = sym::Mu(p.relation, p.aut, std::move(lambdas));
  mu_memo_[key] = e;
  return e;
}

Expr LimitEngine::TreeTypeProb(int rho, int type) {
  auto key = std::make_pair(rho, type);
  if (auto it = pr_memo_.find(key); it != pr_memo_.end()) return it->second;
  TreeType t = registry_->type(type);
  if (t.radius > rho) throw Error(ErrorKind::kInvalidArgument, "type deeper than the radius");
  if (rho > registry_->complete_radius()) {
    throw Error(ErrorKind::kPartialRegistry, "tree types not enumerated up to radius " +
                                                 std::to_string(rho));
  }
  Expr e = sym::One();
  if (rho > 0) {
    std::vector<Expr> factors;
    for (int eps : registry_->PatternsUpTo(rho)) {
      int count = 0;
      for (auto [pid, c] : t.signature) {
        if (pid == eps) count = c;
      }
      Expr mu = Mu(rho, eps);
      factors.push_back(count < k_ ? sym::PoissonPmf(mu, count) : sym::PoissonTail(mu, k_));
    }
    e = sym::LambdaProduct(std::move(factors));
  }
  pr_memo_[key] = e;
  return e;
}

std::vector<CycleWord> LimitEngine::ShapeWords() {
  std::vector<CycleWord> out;
  std::set<std::vector<int>> seen;
  int nl = static_cast<int>(words_.letters().size());
  if (nl == 0) return out;
  // A cycle of L edges has diameter at least L / 2.
  for (int len = 2; len <= edge_cap_ && len / 2 <= 2 * r_ + 1; ++len) {
    if (PowSize(nl, len) > static_cast<double>(options_.cycle_cap)) {
      Cap("cycle shapes of length " + std::to_string(len), options_.cycle_cap);
    }
    std::vector<int> digits(len, 0);
    do {
      CycleWord w(len);
      for (int i = 0; i < len; ++i) {
        w[i].letter = digits[i];
        w[i].extra_colors.assign(words_.arity(digits[i]) - 2, 0);
      }
      std::vector<int> key = words_.CanonicalKey(w);
      if (!seen.insert(key).second) continue;
      Hypergraph bare = words_.Build(w).cycle;
      if (bare.num_edges() != len) continue;
      if (Diameter(bare) > 2 * r_ + 1) continue;
      out.push_back(std::move(w));
    } while (NextTuple(digits, nl));
  }
  return out;
}

void LimitEngine::EnumerateCycles() {
  std::vector<int> types = registry_->TypesUpTo(r_);
  int nt = static_cast<int>(types.size());
  auto add = [&](std::vector<int> key, Hypergraph cycle, std::vector<int> colors,
                 std::int64_t aut, bool loop) {
    if (cycle_index_.count(key)) return;
    if (cycles_.size() >= options_.cycle_cap) Cap("cycle classes", options_.cycle_cap);
    CycleClass c;
    c.id = static_cast<int>(cycles_.size());
    c.edges.assign(vocab_->size(), 0);
    for (EdgeId e = 0; e < cycle.num_edges(); ++e) ++c.edges[cycle.EdgeRelation(e)];
    c.key = key;
    c.cycle = std::move(cycle);
    c.colors = std::move(colors);
    c.aut = aut;
    c.loop = loop;
    cycle_index_[std::move(key)] = c.id;
    cycles_.push_back(std::move(c));
  };

  for (const CycleWord& shape : ShapeWords()) {
    ColoredCycle bare = words_.Build(shape);
    int nv = bare.cycle.num_vertices();
    if (PowSize(nt, nv) > static_cast<double>(options_.cycle_cap) * 64) {
      Cap("cycle colorings", options_.cycle_cap);
    }
    std::vector<int> digits(nv, 0);
    do {
      CycleWord w = shape;
      int next = static_cast<int>(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i].color = types[digits[i]];
        for (int& c : w[i].extra_colors) c = types[digits[next++]];
      }
      std::int64_t aut = 1;
      std::vector<int> key = words_.CanonicalKey(w, &aut);
      if (cycle_index_.count(key)) continue;
      ColoredCycle cc = words_.Build(w);
      add(std::move(key), std::move(cc.cycle), std::move(cc.colors), aut, false);
    } while (NextTuple(digits, nt));
  }

  // Loop edges: one repeated vertex.
  for (int rel = 0; rel < vocab_->size(); ++rel) {
    const Relation& R = vocab_->relation(rel);
    for (const OrbitPattern& pat : vocab_->Patterns(rel)) {
      if (pat.distinct != R.arity - 1 || pat.distinct < 1) continue;
      for (const auto& rep : pat.orbit_reps) {
        std::vector<Vertex> tuple(rep.begin(), rep.end());
        if (ViolatesAntiReflexivity(R, tuple)) continue;
        for (Vertex& v : tuple) ++v;
        std::vector<int> digits(pat.distinct, 0);
        do {
          std::vector<int> colors(pat.distinct);
          for (int j = 0; j < pat.distinct; ++j) colors[j] = types[digits[j]];
          Hypergraph::Builder b(vocab_);
          b.AddVertexRange(1, pat.distinct + 1);
          b.AddEdge(rel, tuple);
          Hypergraph h = b.Build();
          std::int64_t aut = 1;
          std::vector<int> key = words_.KeyOf(h, colors, &aut);
          add(std::move(key), std::move(h), std::move(colors), aut, true);
        } while (NextTuple(digits, nt));
      }
    }
  }
  gamma_memo_.assign(cycles_.size(), nullptr);
  cycles_done_ = true;
}

const std::vector<CycleClass>& LimitEngine::Cycles() {
  if (!cycles_done_) EnumerateCycles();
  return cycles_;
}

int LimitEngine::CycleId(const std::vector<int>& key) {
  Cycles();
  auto it = cycle_index_.find(key);
  return it == cycle_index_.end() ? -1 : it->second;
}

Expr LimitEngine::Gamma(const CycleClass& c) {
  bool indexed = cycles_done_ && c.id < static_cast<int>(cycles_.size()) &&
                 cycles_[c.id].key == c.key;
  if (indexed && gamma_memo_[c.id]) return gamma_memo_[c.id];
  std::vector<Expr> lambdas;
  for (int t : c.colors) lambdas.push_back(TreeTypeProb(r_, t));
  Expr e = sym::Gamma(sym::LambdaProduct(std::move(lambdas)), c.aut, c.edges);
  if (indexed) gamma_memo_[c.id] = e;
  return e;
}

std::vector<AgreeClass> LimitEngine::Classes() {
  const auto& cycles = Cycles();
  if (PowSize(k_ + 1, static_cast<int>(cycles.size())) >
      static_cast<double>(options_.class_cap)) {
    Cap("agreeability classes (" + std::to_string(k_ + 1) + "^" +
            std::to_string(cycles.size()) + ")",
        options_.class_cap);
  }
  std::vector<AgreeClass> out;
  std::vector<int> digits(cycles.size(), 0);
  do {
    out.push_back({digits});
  } while (NextTuple(digits, k_ + 1));
  return out;
}

Expr LimitEngine::ClassProb(const AgreeClass& o) {
  const auto& cycles = Cycles();
  if (o.counts.size() != cycles.size()) {
    throw Error(ErrorKind::kInvalidArgument, "class does not match the cycle list");
  }
  std::vector<Expr> factors;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    int c = o.counts[i];
    Expr g = Gamma(cycles[i]);
    factors.push_back(c < k_ ? sym::PoissonPmf(g, c) : sym::PoissonTail(g, k_));
  }
  return sym::UpsilonProduct(std::move(factors));
}

Vertex LimitEngine::AttachTree(Hypergraph::Builder& b, int type, Vertex at, Vertex next) {
  RootedTree rep = registry_->Representative(type);
  auto map = [&](Vertex v) { return v == rep.root ? at : next + (v - 2); };
  for (EdgeId e = 0; e < rep.tree.num_edges(); ++e) {
    std::vector<Vertex> t;
    for (Vertex v : rep.tree.EdgeTuple(e)) t.push_back(map(v));
    b.AddEdge(rep.tree.EdgeRelation(e), t);
  }
  b.AddVertex(at);
  Vertex end = next + rep.tree.num_vertices() - 1;
  if (end > next) b.AddVertexRange(next, end);
  return end;
}

Hypergraph LimitEngine::Planted(const Hypergraph& cycle, const std::vector<int>& colors,
                                Vertex first) {
  Hypergraph::Builder b(vocab_);
  int nv = cycle.num_vertices();
  for (EdgeId e = 0; e < cycle.num_edges(); ++e) {
    std::vector<Vertex> t;
    for (Vertex v : cycle.EdgeTuple(e)) t.push_back(first + cycle.IndexOrThrow(v));
    b.AddEdge(cycle.EdgeRelation(e), t);
  }
  Vertex next = first + nv;
  for (int i = 0; i < nv; ++i) next = AttachTree(b, colors[i], first + i, next);
  return b.Build();
}

Hypergraph LimitEngine::PlantRich(const AgreeClass& o) {
  const auto& cycles = Cycles();
  if (o.counts.size() != cycles.size()) {
    throw Error(ErrorKind::kInvalidArgument, "class does not match the cycle list");
  }
  Hypergraph::Builder b(vocab_);
  Vertex next = 1;
  for (int t : registry_->TypesUpTo(r_)) {
    for (int copy = 0; copy < 2 * k_ + 1; ++copy) {
      Vertex root = next;
      next = AttachTree(b, t, root, next + 1);
    }
  }
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (int copy = 0; copy < o.counts[i]; ++copy) {
      Hypergraph p = Planted(cycles[i].cycle, cycles[i].colors, next);
      for (EdgeId e = 0; e < p.num_edges(); ++e) b.AddEdge(p.EdgeRelation(e), p.EdgeTuple(e));
      for (Vertex v : p.vertices()) b.AddVertex(v);
      next += p.num_vertices();
    }
  }
  Hypergraph h = b.Build();
  if (!IsRich(h, *registry_, r_)) {
    throw Error(ErrorKind::kRichnessCheckFailed, "planted structure is not rich");
  }
  if (ClassOf(h).counts != o.counts) {
    throw Error(ErrorKind::kRichnessCheckFailed, "planted structure left its class");
  }
  return h;
}

AgreeClass LimitEngine::ClassOf(const Hypergraph& h) {
  const auto& cycles = Cycles();
  AgreeClass out{std::vector<int>(cycles.size(), 0)};
  Hypergraph core = Core(h, {}, r_);
  for (const auto& comp : ConnectedComponents(core)) {
    Hypergraph sub = Induced(core, comp);
    Hypergraph center = Center(sub);
    if (center.num_edges() == 0 || Excess(center) != 0) {
      throw Error(ErrorKind::kInvalidArgument, "structure is not " + std::to_string(r_) +
                                                   "-simple");
    }
    std::vector<int> colors;
    for (Vertex v : center.vertices()) colors.push_back(registry_->TypeOf(HangingTree(sub, {}, v)));
    int id = CycleId(words_.KeyOf(center, colors));
    if (id < 0) {
      throw Error(ErrorKind::kInvalidArgument, "core component outside the enumerated cycles");
    }
    out.counts[id] = std::min(k_, out.counts[id] + 1);
  }
  return out;
}

namespace {

// Whether the candidates (vertex indices) lie within distance d of at most
// `balls` vertices.
bool Coverable(const Hypergraph& h, const std::vector<int>& cands, int balls, int d) {
  if (cands.empty()) return true;
  if (balls == 0) return false;
  int c = cands[0];
  std::vector<int> near = BfsDistances(h, std::span<const int>(&c, 1), d);
  for (int u = 0; u < h.num_vertices(); ++u) {
    if (near[u] == kUnreached) continue;
    std::vector<int> du = BfsDistances(h, std::span<const int>(&u, 1), d);
    std::vector<int> rest;
    for (int x : cands) {
      if (du[x] == kUnreached) rest.push_back(x);
    }
    if (Coverable(h, rest, balls - 1, d)) return true;
  }
  return false;
}

}  // namespace

bool IsRich(const Hypergraph& h, TypeRegistry& registry, int r) {
  int k = registry.k();
  std::vector<int> xs;
  for (Vertex v : SaturatedVertices(h, 2 * r + 1)) xs.push_back(h.IndexOrThrow(v));
  std::vector<int> dx = BfsDistances(h, xs);
  for (int rp = 0; rp <= r; ++rp) {
    std::map<int, std::vector<int>> cands;
    for (int i = 0; i < h.num_vertices(); ++i) {
      if (dx[i] != kUnreached && dx[i] <= 2 * rp + 1) continue;
      Vertex v = h.VertexAt(i);
      std::vector<Vertex> ball = Neighborhood(h, std::span<const Vertex>(&v, 1), rp);
      RootedTree t{Induced(h, ball), v};
      try {
        cands[registry.TypeOf(t)].push_back(i);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNotATree) throw;
      }
    }
    for (int t : registry.TypesUpTo(rp)) {
      if (Coverable(h, cands[t], k, 2 * rp + 1)) return false;
    }
  }
  return true;
}

namespace {

// Truth of a quantifier-free sentence (true/false combinations).
bool ConstantTruth(const Formula& phi) {
  Hypergraph::Builder b(phi.vocabulary_ptr());
  b.AddVertex(1);
  return Evaluate(b.Build(), phi);
}

void CheckSentence(const Formula& phi) {
  if (!phi.IsSentence()) {
    throw Error(ErrorKind::kInvalidArgument, "limit probabilities are defined for sentences");
  }
}

Expr SumTrue(const std::vector<LimitTerm>& terms) {
  std::vector<Expr> t;
  for (const auto& term : terms) {
    if (term.truth) t.push_back(term.prob);
  }
  if (t.empty()) return sym::Constant(Rational(0));
  return sym::UpsilonSum(std::move(t));
}

LimitResult ConstantResult(const Formula& phi) {
  LimitResult res;
  bool truth = ConstantTruth(phi);
  res.terms.push_back({0, truth, sym::One(), "all structures"});
  res.value = truth ? sym::One() : sym::Constant(Rational(0));
  return res;
}

// Per-lump accumulation of symbolic terms keyed by rank type.
struct Accumulator {
  std::map<TypeId, std::vector<Expr>> terms;
  void Add(TypeId t, Expr e) { terms[t].push_back(std::move(e)); }
};

}  // namespace

LimitResult LimitProbability(const Formula& phi, int override_r, const LimitOptions& options) {
  CheckSentence(phi);
  int k = phi.QuantifierRank();
  if (k == 0) return ConstantResult(phi);
  int r = override_r >= 0 ? override_r : DefaultRadius(k);
  const VocabularyPtr& vocab = phi.vocabulary_ptr();
  LimitEngine eng(vocab, k, r, options);
  TypeRegistry& reg = eng.registry();
  const CycleWords& words = eng.words();
  RankTypeTable table(vocab);
  std::vector<int> types = reg.TypesUpTo(r);

  auto check_states = [&] {
    if (table.num_types() > options.state_cap) Cap("rank types", options.state_cap);
  };

  std::map<int, RootedTree> reps;
  for (int t : types) reps[t] = reg.Representative(t);

  // Forest part of every plant.
  TypeId forest = -1;
  for (int t : types) {
    TypeId rt = RankType(table, reps[t].tree, {}, k);
    for (int copy = 0; copy < 2 * k + 1; ++copy) forest = forest < 0 ? rt : table.Glue(forest, rt);
  }

  // Component groups: rank-k type of the planted cycle -> Gamma terms.
  Accumulator groups;

  // Loops and two-edge cycles are enumerated class by class.
  {
    LimitOptions small = options;
    small.edge_cap = std::min(eng.edge_cap(), 2);
    LimitEngine few(vocab, k, r, small);
    for (const CycleClass& c : few.Cycles()) {
      Hypergraph p = few.Planted(c.cycle, c.colors);
      groups.Add(RankType(table, p, {}, k), few.Gamma(c));
      check_states();
    }
  }

  // Longer cycles: sum over traversal words, tracking the rank-k type of
  // the path w_0 .. w_i pinned at its ends. A labeled cycle has
  // 2L * prod (a_i - 2)! traversals.
  std::map<int, std::vector<int>> letters_by_arity;
  for (std::size_t l = 0; l < words.letters().size(); ++l) {
    letters_by_arity[words.arity(static_cast<int>(l))].push_back(static_cast<int>(l));
  }
  std::vector<int> arities;
  for (const auto& [a, ls] : letters_by_arity) arities.push_back(a);

  struct Piece {
    TypeId type;
    std::vector<Expr> weight;
  };
  // piece[letter][close]: edge IN -> OUT with trees at the private vertices
  // and, unless closing, at OUT.
  std::map<std::pair<int, bool>, std::vector<Piece>> pieces;
  auto pieces_for = [&](int letter, bool close) -> const std::vector<Piece>& {
    auto key = std::make_pair(letter, close);
    if (auto it = pieces.find(key); it != pieces.end()) return it->second;
    const CycleLetter& L = words.letters()[letter];
    int extras = static_cast<int>(L.labels.size()) - 2;
    int free = extras + (close ? 0 : 1);
    std::vector<Piece> out;
    std::vector<int> digits(free, 0);
    do {
      Hypergraph::Builder b(vocab);
      std::vector<Vertex> tuple;
      for (int l : L.labels) tuple.push_back(l + 1);
      b.AddEdge(L.relation, tuple);
      b.AddVertexRange(1, extras + 3);
      Vertex next = extras + 3;
      std::vector<Expr> w{sym::Beta(L.relation)};
      for (int j = 0; j < free; ++j) {
        int t = types[digits[j]];
        Vertex at = j < extras ? 3 + j : 2;
        RootedTree& rep = reps[t];
        for (EdgeId e = 0; e < rep.tree.num_edges(); ++e) {
          std::vector<Vertex> tt;
          for (Vertex v : rep.tree.EdgeTuple(e)) tt.push_back(v == rep.root ? at : next + v - 2);
          b.AddEdge(rep.tree.EdgeRelation(e), tt);
        }
        if (rep.tree.num_vertices() > 1) b.AddVertexRange(next, next + rep.tree.num_vertices() - 1);
        next += rep.tree.num_vertices() - 1;
        w.push_back(eng.TreeTypeProb(r, t));
      }
      Hypergraph h = b.Build();
      Vertex pins[2] = {1, 2};
      out.push_back({RankType(table, h, pins, k), std::move(w)});
    } while (NextTuple(digits, static_cast<int>(types.size())));
    return pieces[key] = std::move(out);
  };

  std::map<int, TypeId> starts;
  for (int t : types) {
    Vertex pins[2] = {reps[t].root, reps[t].root};
    starts[t] = RankType(table, reps[t].tree, pins, k);
  }

  const std::pair<int, int> extend_share[1] = {{1, 0}};
  const std::pair<int, int> close_share[2] = {{1, 0}, {0, 1}};
  const int keep_ends[2] = {0, 2};
  for (int len = 3; len <= eng.edge_cap() && len / 2 <= 2 * r + 1; ++len) {
    std::vector<int> seq(len, 0);
    int na = static_cast<int>(arities.size());
    if (PowSize(na, len) > static_cast<double>(options.cycle_cap)) {
      Cap("arity sequences of length " + std::to_string(len), options.cycle_cap);
    }
    do {
      // The bare shape depends on the arities only.
      CycleWord probe(len);
      std::int64_t fact = 1;
      for (int i = 0; i < len; ++i) {
        int a = arities[seq[i]];
        probe[i].letter = letters_by_arity[a][0];
        probe[i].extra_colors.assign(a - 2, 0);
        fact *= Factorial(a - 2);
      }
      if (Diameter(words.Build(probe).cycle) > 2 * r + 1) continue;

      std::map<TypeId, Expr> states;
      for (int t : types) {
        std::vector<Expr> f{eng.TreeTypeProb(r, t)};
        Expr prev = states.count(starts[t]) ? states[starts[t]] : nullptr;
        Expr w = sym::GammaProduct(f);
        states[starts[t]] = prev ? sym::GammaSum({prev, w}) : w;
      }
      for (int i = 0; i + 1 < len; ++i) {
        // target -> piece -> weights of the source states.
        std::map<TypeId, std::map<const Piece*, std::vector<Expr>>> next;
        for (const auto& [s, w] : states) {
          for (int letter : letters_by_arity[arities[seq[i]]]) {
            for (const Piece& p : pieces_for(letter, false)) {
              TypeId g = table.Glue(s, p.type, extend_share);
              next[table.Forget(g, keep_ends)][&p].push_back(w);
            }
          }
        }
        check_states();
        table.ClearCaches();
        states.clear();
        for (auto& [s, by_piece] : next) {
          std::vector<Expr> terms;
          for (auto& [p, ws] : by_piece) {
            std::vector<Expr> f{sym::GammaSum(std::move(ws))};
            f.insert(f.end(), p->weight.begin(), p->weight.end());
            terms.push_back(sym::GammaProduct(std::move(f)));
          }
          states[s] = sym::GammaSum(std::move(terms));
        }
      }
      Expr norm = sym::Constant(Rational(1, 2 * len * fact));
      for (const auto& [s, w] : states) {
        for (int letter : letters_by_arity[arities[seq[len - 1]]]) {
          for (const Piece& p : pieces_for(letter, true)) {
            TypeId g = table.Glue(s, p.type, close_share);
            std::vector<Expr> f{w, norm};
            f.insert(f.end(), p.weight.begin(), p.weight.end());
            groups.Add(table.Forget(g, {}), sym::GammaProduct(std::move(f)));
          }
        }
      }
      check_states();
    } while (NextTuple(seq, na));
  }

  // Union of the forest with capped numbers of components of each group.
  std::map<TypeId, Expr> states{{forest, sym::One()}};
  for (auto& [t, terms] : groups.terms) {
    Expr gamma = sym::GammaSum(std::move(terms));
    Accumulator next;
    for (const auto& [s, w] : states) {
      if (table.Glue(s, t) == s) {
        next.Add(s, w);
        continue;
      }
      TypeId cur = s;
      for (int c = 0; c <= k; ++c) {
        Expr p = c < k ? sym::PoissonPmf(gamma, c) : sym::PoissonTail(gamma, k);
        next.Add(cur, sym::UpsilonProduct({w, p}));
        cur = table.Glue(cur, t);
      }
    }
    check_states();
    states.clear();
    for (auto& [s, ts] : next.terms) states[s] = sym::UpsilonSum(std::move(ts));
  }

  LimitResult res;
  res.k = k;
  res.r = r;
  res.radius_overridden = override_r >= 0;
  int id = 0;
  for (const auto& [s, w] : states) {
    LimitTerm term;
    term.id = id++;
    term.truth = table.Satisfies(s, phi);
    term.prob = w;
    term.description = "rank-" + std::to_string(k) + " type " + std::to_string(s);
    res.terms.push_back(std::move(term));
  }
  res.value = SumTrue(res.terms);
  return res;
}

LimitResult ExplicitLimitProbability(const Formula& phi, int override_r,
                                     const LimitOptions& options) {
  CheckSentence(phi);
  int k = phi.QuantifierRank();
  if (k == 0) return ConstantResult(phi);
  int r = override_r >= 0 ? override_r : DefaultRadius(k);
  LimitEngine eng(phi.vocabulary_ptr(), k, r, options);
  LimitResult res;
  res.k = k;
  res.r = r;
  res.radius_overridden = override_r >= 0;
  int id = 0;
  for (const AgreeClass& o : eng.Classes()) {
    LimitTerm term;
    term.id = id++;
    term.truth = Evaluate(eng.PlantRich(o), phi);
    term.prob = eng.ClassProb(o);
    for (std::size_t i = 0; i < o.counts.size(); ++i) {
      if (o.counts[i] == 0) continue;
      if (!term.description.empty()) term.description += ' ';
      term.description += "c" + std::to_string(i) + (o.counts[i] == k ? ">=" : "=") +
                          std::to_string(o.counts[i]);
    }
    if (term.description.empty()) term.description = "no short cycles";
    res.terms.push_back(std::move(term));
  }
  res.value = SumTrue(res.terms);
  return res;
}

}  // namespace sparselimit
