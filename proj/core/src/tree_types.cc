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


#include "sparselimit/tree_types.hpp"

#include <algorithm>

#include "sparselimit/errors.hpp"

namespace sparselimit {

std::vector<int> CanonicalColoring(const SymmetryGroup& group, const std::vector<int>& colors) {
  std::vector<int> best = colors, cur(colors.size());
  for (const auto& g : group.elements()) {
    for (std::size_t i = 0; i < colors.size(); ++i) cur[i] = colors[g[i]];
    if (cur < best) best = cur;
  }
  return best;
}

int ColoringStabilizer(const SymmetryGroup& group, const std::vector<int>& colors) {
  int count = 0;
  for (const auto& g : group.elements()) {
    bool fixed = true;
    for (std::size_t i = 0; i < colors.size() && fixed; ++i) fixed = colors[g[i]] == colors[i];
    if (fixed) ++count;
  }
  return count;
}

TypeRegistry::TypeRegistry(VocabularyPtr vocab, int k) : vocab_(std::move(vocab)), k_(k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "tree types need k >= 1");
  InternTypeLocked({});
}

int TypeRegistry::num_types() const {
  std::lock_guard lock(mu_);
  return static_cast<int>(types_.size());
}

int TypeRegistry::num_patterns() const {
  std::lock_guard lock(mu_);
  return static_cast<int>(patterns_.size());
}

TreeType TypeRegistry::type(int id) const {
  std::lock_guard lock(mu_);
  return types_.at(id);
}

Pattern TypeRegistry::pattern(int id) const {
  std::lock_guard lock(mu_);
  return patterns_.at(id);
}

int TypeRegistry::complete_radius() const {
  std::lock_guard lock(mu_);
  return complete_radius_;
}

int TypeRegistry::InternPattern(int relation, std::vector<int> colors) {
  std::lock_guard lock(mu_);
  return InternPatternLocked(relation, std::move(colors));
}

int TypeRegistry::InternType(std::vector<std::pair<int, int>> signature) {
  std::lock_guard lock(mu_);
  return InternTypeLocked(std::move(signature));
}

int TypeRegistry::InternPatternLocked(int relation, std::vector<int> colors) {
  const Relation& rel = vocab_->relation(relation);
  if (static_cast<int>(colors.size()) != rel.arity ||
      std::count(colors.begin(), colors.end(), kRootColor) != 1) {
    throw Error(ErrorKind::kInvalidArgument, "pattern needs one root position per edge");
  }
  int radius = 1;
  for (int c : colors) {
    if (c == kRootColor) continue;
    if (c - 1 >= static_cast<int>(types_.size())) {
      throw Error(ErrorKind::kInvalidArgument, "pattern color is not a known type");
    }
    radius = std::max(radius, types_[c - 1].radius + 1);
  }
  colors = CanonicalColoring(rel.group, colors);
  auto key = std::make_pair(relation, colors);
  if (auto it = pattern_index_.find(key); it != pattern_index_.end()) return it->second;
  Pattern p;
  p.relation = relation;
  p.aut = ColoringStabilizer(rel.group, colors);
  p.colors = std::move(colors);
  p.radius = radius;
  int id = static_cast<int>(patterns_.size());
  patterns_.push_back(std::move(p));
  pattern_index_.emplace(std::move(key), id);
  return id;
}

int TypeRegistry::InternTypeLocked(std::vector<std::pair<int, int>> signature) {
  std::sort(signature.begin(), signature.end());
  std::erase_if(signature, [](const auto& pc) { return pc.second == 0; });
  for (std::size_t i = 0; i < signature.size(); ++i) {
    auto [p, c] = signature[i];
    if (p < 0 || p >= static_cast<int>(patterns_.size()) || c < 0 || c > k_ ||
        (i > 0 && signature[i - 1].first == p)) {
      throw Error(ErrorKind::kInvalidArgument, "malformed tree-type signature");
    }
  }
  if (auto it = type_index_.find(signature); it != type_index_.end()) return it->second;
  TreeType t;
  for (auto [p, c] : signature) t.radius = std::max(t.radius, patterns_[p].radius);
  t.signature = signature;
  int id = static_cast<int>(types_.size());
  types_.push_back(std::move(t));
  type_index_.emplace(std::move(signature), id);
  return id;
}

int TypeRegistry::TypeOf(const RootedTree& rt) {
  const Hypergraph& h = rt.tree;
  const int root = h.IndexOrThrow(rt.root);
  if (!IsConnected(h) || Excess(h) != -1) throw Error(ErrorKind::kNotATree, "not a tree");
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (h.HasLoop(e)) throw Error(ErrorKind::kNotATree, "tree with a loop edge");
  }
  const int n = h.num_vertices();
  std::vector<EdgeId> parent(n, -2);
  std::vector<int> order = {root};
  parent[root] = -1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int u = order[i];
    for (EdgeId e : h.Incident(u)) {
      if (e == parent[u]) continue;
      for (int w : h.EdgeVertices(e)) {
        if (w == u) continue;
        if (parent[w] != -2) throw Error(ErrorKind::kNotATree, "not a tree");
        parent[w] = e;
        order.push_back(w);
      }
    }
  }
  std::lock_guard lock(mu_);
  std::vector<int> type(n, -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    const Vertex uv = h.VertexAt(u);
    std::map<int, int> counts;
    for (EdgeId e : h.Incident(u)) {
      if (e == parent[u]) continue;
      std::vector<int> colors;
      for (Vertex x : h.EdgeTuple(e)) {
        colors.push_back(x == uv ? kRootColor : type[*h.IndexOf(x)] + 1);
      }
      ++counts[InternPatternLocked(h.EdgeRelation(e), std::move(colors))];
    }
    std::vector<std::pair<int, int>> sig;
    for (auto [p, c] : counts) sig.push_back({p, std::min(c, k_)});
    type[u] = InternTypeLocked(std::move(sig));
  }
  return type[root];
}

std::vector<int> TypeRegistry::TypesUpTo(int r) const {
  std::lock_guard lock(mu_);
  if (r > complete_radius_) {
    throw Error(ErrorKind::kPartialRegistry,
                "tree types of radius " + std::to_string(r) + " are not fully enumerated");
  }
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(types_.size()); ++i) {
    if (types_[i].radius <= r) out.push_back(i);
  }
  return out;
}

std::vector<int> TypeRegistry::PatternsUpTo(int r) const {
  if (r <= 0) return {};
  std::vector<int> children = TypesUpTo(r - 1);
  std::lock_guard lock(mu_);
  auto* self = const_cast<TypeRegistry*>(this);
  std::vector<int> out;
  for (int rel = 0; rel < vocab_->size(); ++rel) {
    const int arity = vocab_->relation(rel).arity;
    for (int root = 0; root < arity; ++root) {
      std::vector<int> idx(arity - 1, 0);
      while (true) {
        std::vector<int> colors;
        for (int i = 0, j = 0; i < arity; ++i) {
          colors.push_back(i == root ? kRootColor : children[idx[j++]] + 1);
        }
        out.push_back(self->InternPatternLocked(rel, std::move(colors)));
        int i = arity - 2;
        while (i >= 0 && ++idx[i] == static_cast<int>(children.size())) idx[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool TypeRegistry::Enumerate(int r, std::size_t cap) {
  while (complete_radius() < r) {
    const int next = complete_radius() + 1;
    std::vector<int> pats = PatternsUpTo(next);
    // (k+1)^|pats| signatures.
    std::size_t total = 1;
    for (std::size_t i = 0; i < pats.size(); ++i) {
      if (total > cap / (k_ + 1)) return false;
      total *= k_ + 1;
    }
    if (total > cap) return false;
    std::lock_guard lock(mu_);
    std::vector<int> counts(pats.size(), 0);
    while (true) {
      std::vector<std::pair<int, int>> sig;
      for (std::size_t i = 0; i < pats.size(); ++i) {
        if (counts[i] > 0) sig.push_back({pats[i], counts[i]});
      }
      InternTypeLocked(std::move(sig));
      std::size_t i = 0;
      while (i < counts.size() && ++counts[i] > k_) counts[i++] = 0;
      if (i == counts.size()) break;
    }
    complete_radius_ = next;
  }
  return true;
}

void TypeRegistry::AddRepresentative(int id, Hypergraph::Builder& b, Vertex root,
                                     Vertex& next) const {
  for (auto [p, c] : types_[id].signature) {
    const Pattern& pat = patterns_[p];
    for (int copy = 0; copy < c; ++copy) {
      std::vector<Vertex> tuple;
      std::vector<std::pair<Vertex, int>> kids;
      for (int color : pat.colors) {
        if (color == kRootColor) {
          tuple.push_back(root);
        } else {
          Vertex v = next++;
          b.AddVertex(v);
          tuple.push_back(v);
          kids.push_back({v, color - 1});
        }
      }
      b.AddEdge(pat.relation, tuple);
      for (auto [v, t] : kids) AddRepresentative(t, b, v, next);
    }
  }
}

RootedTree TypeRegistry::Representative(int id) const {
  std::lock_guard lock(mu_);
  if (id < 0 || id >= static_cast<int>(types_.size())) {
    throw Error(ErrorKind::kInvalidArgument, "unknown tree type");
  }
  Hypergraph::Builder b(vocab_);
  b.AddVertex(1);
  Vertex next = 2;
  AddRepresentative(id, b, 1, next);
  return {b.Build(), 1};
}

std::string TypeRegistry::PatternString(int id) const {
  Pattern p = pattern(id);
  std::string s = vocab_->relation(p.relation).name + "(";
  for (std::size_t i = 0; i < p.colors.size(); ++i) {
    if (i) s += ",";
    s += p.colors[i] == kRootColor ? "*" : "t" + std::to_string(p.colors[i] - 1);
  }
  return s + ")";
}

std::string TypeRegistry::SignatureString(int id) const {
  TreeType t = type(id);
  std::string s = "{";
  for (std::size_t i = 0; i < t.signature.size(); ++i) {
    auto [p, c] = t.signature[i];
    if (i) s += " ";
    s += PatternString(p) + ":" + (c == k_ ? ">=" : "") + std::to_string(c);
  }
  return s + "}";
}

TypeRegistryPtr EnumerateTreeTypes(VocabularyPtr vocab, int k, int r, std::size_t cap) {
  auto reg = std::make_shared<TypeRegistry>(std::move(vocab), k);
  if (!reg->Enumerate(r, cap)) {
    throw Error(ErrorKind::kCapExceeded, "tree-type enumeration for k=" + std::to_string(k) +
                                             ", r=" + std::to_string(r) + " exceeds the cap of " +
                                             std::to_string(cap) + " types");
  }
  return reg;
}

}  // namespace sparselimit
