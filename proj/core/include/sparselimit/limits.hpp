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


#ifndef SPARSELIMIT_LIMITS_HPP_
#define SPARSELIMIT_LIMITS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sparselimit/cycles.hpp"
#include "sparselimit/formula.hpp"
#include "sparselimit/symexpr.hpp"
#include "sparselimit/tree_types.hpp"

namespace sparselimit {

struct LimitOptions {
  std::size_t type_cap = 1 << 14;
  // Colored cycle classes (explicit enumeration) or traversal words per
  // length and arity sequence (lumped computation).
  std::size_t cycle_cap = 1 << 18;
  std::size_t class_cap = 1 << 16;
  // Longest cycle considered; -1 means 4r + 4.
  int edge_cap = -1;
  // Distinct rank types held by the lumped computation.
  std::size_t state_cap = 1 << 23;
};

// (k, r)-cycle: a colored cycle of diameter at most 2r + 1, colors being
// tree type ids of radius <= r.
struct CycleClass {
  int id = 0;
  std::vector<int> key;
  Hypergraph cycle;
  // Per vertex index of `cycle`.
  std::vector<int> colors;
  std::int64_t aut = 1;
  std::vector<int> edges;  // per relation
  bool loop = false;
};

// Capped component counts per cycle class id (k stands for ">= k").
struct AgreeClass {
  std::vector<int> counts;
};

int DefaultRadius(int k);

class LimitEngine {
 public:
  LimitEngine(VocabularyPtr vocab, int k, int r, LimitOptions options = {});

  const Vocabulary& vocabulary() const { return *vocab_; }
  int k() const { return k_; }
  int r() const { return r_; }
  int edge_cap() const { return edge_cap_; }
  TypeRegistry& registry() { return *registry_; }
  const CycleWords& words() const { return words_; }

  // mu_{rho, pattern}.
  Expr Mu(int rho, int pattern);
  // Pr[rho, t] for a type of radius <= rho.
  Expr TreeTypeProb(int rho, int type);

  // Bare cycle shapes (word keys with all colors 0) admitted by the
  // diameter and edge bounds, as arity sequences up to rotation/reflection
  // are not distinguished here: each shape comes with one word.
  std::vector<CycleWord> ShapeWords();

  // C(k, r). Throws CapExceeded.
  const std::vector<CycleClass>& Cycles();
  // Id in Cycles() of a colored cycle, or -1.
  int CycleId(const std::vector<int>& key);
  Expr Gamma(const CycleClass& c);

  // Every class over Cycles(). Throws CapExceeded.
  std::vector<AgreeClass> Classes();
  Expr ClassProb(const AgreeClass& o);

  // Forest of 2k+1 copies of each tree type representative plus the
  // cycles of o with representative trees hanging. Throws
  // RichnessCheckFailed when the result is not rich or not in o.
  Hypergraph PlantRich(const AgreeClass& o);
  // Class of an r-simple hypergraph.
  AgreeClass ClassOf(const Hypergraph& h);
  // The colored cycle with representative trees at every vertex, vertex ids
  // starting at first.
  Hypergraph Planted(const Hypergraph& cycle, const std::vector<int>& colors, Vertex first = 1);

 private:
  Vertex AttachTree(Hypergraph::Builder& b, int type, Vertex at, Vertex next);
  void EnumerateCycles();

  VocabularyPtr vocab_;
  int k_;
  int r_;
  int edge_cap_;
  LimitOptions options_;
  TypeRegistryPtr registry_;
  CycleWords words_;
  std::map<std::pair<int, int>, Expr> mu_memo_;
  std::map<std::pair<int, int>, Expr> pr_memo_;
  bool cycles_done_ = false;
  std::vector<CycleClass> cycles_;
  std::map<std::vector<int>, int> cycle_index_;
  std::vector<Expr> gamma_memo_;
};

// (k, r)-richness.
bool IsRich(const Hypergraph& h, TypeRegistry& registry, int r);

// One term of a limit: the rank-k type reached, the truth of the formula on
// it, and its probability.
struct LimitTerm {
  int id = 0;
  bool truth = false;
  Expr prob;
  std::string description;
};

struct LimitResult {
  int k = 0;
  int r = 0;
  bool radius_overridden = false;
  std::vector<LimitTerm> terms;
  // Sum of the probabilities of the true terms.
  Expr value;
};

// lim Pr(G_n |= phi): sums, over the rank-k types of rich plants, the
// probability of the component counts producing them. Cycle classes are
// lumped by the rank-k type of their planted component.
LimitResult LimitProbability(const Formula& phi, int override_r = -1,
                             const LimitOptions& options = {});
// Same value by enumerating every agreeability class and model checking its
// plant. Only feasible for tiny cycle sets.
LimitResult ExplicitLimitProbability(const Formula& phi, int override_r = -1,
                                     const LimitOptions& options = {});

}  // namespace sparselimit

#endif  // SPARSELIMIT_LIMITS_HPP_
