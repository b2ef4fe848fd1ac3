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


#include "sparselimit/rank_types.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sparselimit/errors.hpp"
#include "sparselimit/structure.hpp"

namespace sparselimit {
namespace {

template <typename T>
void AppendBytes(std::string& s, const T& v) {
  s.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void AppendVector(std::string& s, const std::vector<T>& v) {
  AppendBytes(s, v.size());
  s.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(T));
}

std::vector<std::int8_t> Rgs(std::span<const int> labels) {
  std::vector<std::int8_t> out(labels.size());
  std::map<int, int> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = seen.emplace(labels[i], static_cast<int>(seen.size()));
    out[i] = static_cast<std::int8_t>(it->second);
  }
  return out;
}

// Calls f(positions) for every tuple in [m]^arity.
template <typename F>
void ForEachTuple(int m, int arity, F&& f) {
  std::vector<int> idx(arity, 0);
  if (m == 0) return;
  while (true) {
    f(std::span<const int>(idx));
    int i = arity - 1;
    while (i >= 0 && ++idx[i] == m) idx[i--] = 0;
    if (i < 0) return;
  }
}

void CheckSize(int m) {
  if (m > kMaxTypePositions) {
    throw Error(ErrorKind::kCapExceeded, "too many pinned positions for a rank type");
  }
}

}  // namespace

std::uint64_t AtomCode(int relation, std::span<const int> positions) {
  std::uint64_t code = static_cast<std::uint64_t>(relation) << 36;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    code |= static_cast<std::uint64_t>(positions[i]) << (4 * i);
  }
  return code;
}

RankTypeTable::RankTypeTable(VocabularyPtr vocab) : vocab_(std::move(vocab)) {}

int RankTypeTable::InternAtomic(AtomicType a) {
  std::string key;
  AppendBytes(key, a.size);
  AppendVector(key, a.eq);
  AppendVector(key, a.holds);
  AppendVector(key, a.dist);
  auto [it, fresh] = atomic_index_.emplace(std::move(key), static_cast<int>(atomics_.size()));
  if (fresh) atomics_.push_back(std::move(a));
  return it->second;
}

namespace {

std::uint64_t Mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

}  // namespace

std::uint64_t RankTypeTable::NodeHash(int rank, int atomic,
                                      const std::vector<TypeId>& children) const {
  std::uint64_t h = Mix(Mix(0x12345, rank), atomic);
  for (TypeId c : children) h = Mix(h, c);
  return h;
}

std::size_t RankTypeTable::KeyHash::operator()(const GlueKey& k) const {
  std::uint64_t h = Mix(Mix(Mix(1, k.a), k.b), k.m);
  for (int i = 0; i < 2 * k.m; ++i) h = Mix(h, static_cast<std::uint8_t>(k.layout[i]));
  return h;
}

std::size_t RankTypeTable::KeyHash::operator()(const ForgetKey& k) const {
  std::uint64_t h = Mix(Mix(2, k.t), k.m);
  for (int i = 0; i < k.m; ++i) h = Mix(h, static_cast<std::uint8_t>(k.keep[i]));
  return h;
}

TypeId RankTypeTable::Intern(int rank, int atomic, std::vector<TypeId> children) {
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  std::uint64_t h = NodeHash(rank, atomic, children);
  auto [lo, hi] = node_index_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    const Node& n = nodes_[it->second];
    if (n.rank == rank && n.atomic == atomic && n.children == children) return it->second;
  }
  TypeId id = static_cast<TypeId>(nodes_.size());
  children.shrink_to_fit();
  nodes_.push_back({rank, atomic, std::move(children)});
  node_index_.emplace(h, id);
  return id;
}

void RankTypeTable::ClearCaches() {
  glue_memo_ = {};
  forget_memo_ = {};
}

bool RankTypeTable::Holds(const AtomicType& a, int relation, std::span<const int> positions) const {
  return std::binary_search(a.holds.begin(), a.holds.end(), AtomCode(relation, positions));
}

TypeId RankTypeTable::Glue(TypeId a, TypeId b, std::span<const std::pair<int, int>> shared) {
  if (rank(a) != rank(b)) throw Error(ErrorKind::kInvalidArgument, "glued types differ in rank");
  if (!atomic(a).dist.empty() || !atomic(b).dist.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "distance types do not compose");
  }
  Layout layout;
  std::vector<bool> b_used(size(b), false);
  for (int p = 0; p < size(a); ++p) {
    int q = -1;
    for (auto [sp, sq] : shared) {
      if (sp == p) q = sq;
    }
    if (q >= 0) b_used.at(q) = true;
    layout.push_back({static_cast<std::int8_t>(p), static_cast<std::int8_t>(q)});
  }
  for (int q = 0; q < size(b); ++q) {
    if (!b_used[q]) layout.push_back({-1, static_cast<std::int8_t>(q)});
  }
  return GlueRec(a, b, layout);
}

TypeId RankTypeTable::GlueRec(TypeId a, TypeId b, const Layout& layout) {
  const int m = static_cast<int>(layout.size());
  CheckSize(m);
  GlueKey key{a, b, static_cast<std::int8_t>(m), {}};
  for (int i = 0; i < m; ++i) {
    key.layout[2 * i] = layout[i].first;
    key.layout[2 * i + 1] = layout[i].second;
  }
  if (auto it = glue_memo_.find(key); it != glue_memo_.end()) return it->second;

  const AtomicType& aa = atomic(a);
  const AtomicType& ab = atomic(b);

  // Combined positions are equal when either side says so.
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      auto [pa, pb] = layout[p];
      auto [qa, qb] = layout[q];
      bool same = (pa >= 0 && qa >= 0 && aa.eq[pa] == aa.eq[qa]) ||
                  (pb >= 0 && qb >= 0 && ab.eq[pb] == ab.eq[qb]);
      if (same) parent[find(p)] = find(q);
    }
  }
  std::vector<int> cls(m), rep_a(m, -1), rep_b(m, -1);
  for (int p = 0; p < m; ++p) {
    cls[p] = find(p);
    if (layout[p].first >= 0) rep_a[cls[p]] = layout[p].first;
    if (layout[p].second >= 0) rep_b[cls[p]] = layout[p].second;
  }
  AtomicType out;
  out.size = m;
  out.eq = Rgs(cls);
  std::vector<int> mapped;
  for (int rel = 0; rel < vocab_->size(); ++rel) {
    const int arity = vocab_->relation(rel).arity;
    ForEachTuple(m, arity, [&](std::span<const int> pos) {
      bool holds = false;
      for (int side = 0; side < 2 && !holds; ++side) {
        const std::vector<int>& rep = side == 0 ? rep_a : rep_b;
        mapped.clear();
        bool inside = true;
        for (int p : pos) {
          int x = rep[cls[p]];
          if (x < 0) {
            inside = false;
            break;
          }
          mapped.push_back(x);
        }
        if (inside) holds = Holds(side == 0 ? aa : ab, rel, mapped);
      }
      if (holds) out.holds.push_back(AtomCode(rel, pos));
    });
  }
  std::sort(out.holds.begin(), out.holds.end());

  std::vector<TypeId> kids;
  if (rank(a) > 0) {
    const int ma = size(a);
    const int mb = size(b);
    // Layout position of each pin of a and b.
    std::vector<int> where_a(ma, -1), where_b(mb, -1);
    for (int p = 0; p < m; ++p) {
      if (layout[p].first >= 0) where_a[layout[p].first] = p;
      if (layout[p].second >= 0) where_b[layout[p].second] = p;
    }
    auto shared_partner = [&](const AtomicType& at, int self_size, const std::vector<int>& where,
                              bool from_a) -> int {
      // Pin of the other side equal to the new last position, or -1.
      for (int p = 0; p < self_size; ++p) {
        if (at.eq[p] != at.eq[self_size]) continue;
        auto [la, lb] = layout[where[p]];
        int other = from_a ? lb : la;
        if (other >= 0) return other;
      }
      return -1;
    };
    for (TypeId c : children(a)) {
      const AtomicType& ac = atomic(c);
      Layout next = layout;
      int q = shared_partner(ac, ma, where_a, true);
      TypeId partner = b;
      if (q >= 0) {
        partner = -1;
        for (TypeId d : children(b)) {
          const AtomicType& ad = atomic(d);
          if (ad.eq[mb] == ad.eq[q]) {
            partner = d;
            break;
          }
        }
        next.push_back({static_cast<std::int8_t>(ma), static_cast<std::int8_t>(mb)});
      } else {
        next.push_back({static_cast<std::int8_t>(ma), -1});
      }
      if (partner < 0) throw Error(ErrorKind::kInvalidArgument, "inconsistent glue");
      kids.push_back(GlueRec(c, partner == b ? Lower(b) : partner, next));
    }
    for (TypeId d : children(b)) {
      if (shared_partner(atomic(d), mb, where_b, false) >= 0) continue;
      Layout next = layout;
      next.push_back({-1, static_cast<std::int8_t>(mb)});
      kids.push_back(GlueRec(Lower(a), d, next));
    }
  }
  TypeId result = Intern(rank(a), InternAtomic(std::move(out)), std::move(kids));
  glue_memo_.emplace(std::move(key), result);
  return result;
}

TypeId RankTypeTable::Lower(TypeId t) {
  if (rank(t) == 0) throw Error(ErrorKind::kInvalidArgument, "rank-0 type has no lower rank");
  if (auto it = lower_memo_.find(t); it != lower_memo_.end()) return it->second;
  std::vector<TypeId> kids;
  if (rank(t) > 1) {
    for (TypeId c : children(t)) kids.push_back(Lower(c));
  }
  TypeId result = Intern(rank(t) - 1, nodes_[t].atomic, std::move(kids));
  lower_memo_.emplace(t, result);
  return result;
}

TypeId RankTypeTable::Forget(TypeId t, std::span<const int> keep) {
  for (int p : keep) {
    if (p < 0 || p >= size(t)) throw Error(ErrorKind::kInvalidArgument, "position out of range");
  }
  return ForgetRec(t, std::vector<int>(keep.begin(), keep.end()));
}

TypeId RankTypeTable::ForgetRec(TypeId t, const std::vector<int>& keep) {
  const int m = static_cast<int>(keep.size());
  CheckSize(m);
  ForgetKey key{t, static_cast<std::int8_t>(m), {}};
  for (int i = 0; i < m; ++i) key.keep[i] = static_cast<std::int8_t>(keep[i]);
  if (auto it = forget_memo_.find(key); it != forget_memo_.end()) return it->second;
  const AtomicType& at = atomic(t);
  AtomicType out;
  out.size = m;
  std::vector<int> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = at.eq[keep[i]];
  out.eq = Rgs(labels);
  std::vector<int> mapped;
  for (int rel = 0; rel < vocab_->size(); ++rel) {
    ForEachTuple(m, vocab_->relation(rel).arity, [&](std::span<const int> pos) {
      mapped.clear();
      for (int p : pos) mapped.push_back(keep[p]);
      if (Holds(at, rel, mapped)) out.holds.push_back(AtomCode(rel, pos));
    });
  }
  std::sort(out.holds.begin(), out.holds.end());
  if (!at.dist.empty()) {
    const int old = at.size;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) out.dist.push_back(at.dist[keep[i] * old + keep[j]]);
    }
  }
  std::vector<TypeId> kids;
  if (rank(t) > 0) {
    std::vector<int> next = keep;
    next.push_back(size(t));
    for (TypeId c : children(t)) kids.push_back(ForgetRec(c, next));
  }
  TypeId result = Intern(rank(t), InternAtomic(std::move(out)), std::move(kids));
  forget_memo_.emplace(std::move(key), result);
  return result;
}

bool RankTypeTable::Satisfies(TypeId t, const Formula& phi, std::vector<int> binding) const {
  binding.resize(std::max<std::size_t>(binding.size(), phi.num_variables()), -1);
  return SatisfiesRec(t, phi.root(), binding);
}

bool RankTypeTable::SatisfiesRec(TypeId t, const FormulaNode& node,
                                 std::vector<int>& binding) const {
  auto position = [&](int var) {
    int p = binding.at(var);
    if (p < 0) throw Error(ErrorKind::kUnboundVariable, "unbound variable in formula");
    return p;
  };
  switch (node.kind) {
    case FormulaKind::kTrue:
      return true;
    case FormulaKind::kFalse:
      return false;
    case FormulaKind::kAtom: {
      std::vector<int> pos;
      for (int v : node.args) pos.push_back(position(v));
      return Holds(atomic(t), node.relation, pos);
    }
    case FormulaKind::kEquals: {
      const AtomicType& at = atomic(t);
      return at.eq[position(node.args[0])] == at.eq[position(node.args[1])];
    }
    case FormulaKind::kNot:
      return !SatisfiesRec(t, *node.children[0], binding);
    case FormulaKind::kAnd:
      for (const auto& c : node.children) {
        if (!SatisfiesRec(t, *c, binding)) return false;
      }
      return true;
    case FormulaKind::kOr:
      for (const auto& c : node.children) {
        if (SatisfiesRec(t, *c, binding)) return true;
      }
      return false;
    case FormulaKind::kImplies:
      return !SatisfiesRec(t, *node.children[0], binding) ||
             SatisfiesRec(t, *node.children[1], binding);
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      if (rank(t) == 0) {
        throw Error(ErrorKind::kInvalidArgument, "formula quantifier rank exceeds type rank");
      }
      const bool exists = node.kind == FormulaKind::kExists;
      const int saved = binding[node.variable];
      binding[node.variable] = size(t);
      bool result = !exists;
      for (TypeId c : children(t)) {
        if (SatisfiesRec(c, *node.children[0], binding) == exists) {
          result = exists;
          break;
        }
      }
      binding[node.variable] = saved;
      return result;
    }
  }
  return false;
}

namespace {

class ConcreteTyper {
 public:
  ConcreteTyper(RankTypeTable& table, const Hypergraph& h, bool distance)
      : table_(table), h_(h), distance_(distance) {
    if (distance) dist_.resize(h.num_vertices());
  }

  TypeId Type(std::vector<int>& tuple, int rank) {
    auto it = memo_.find(tuple);
    if (it != memo_.end()) return it->second;
    AtomicType at = Atomic(tuple);
    std::vector<TypeId> kids;
    if (rank > 0) {
      kids.reserve(h_.num_vertices());
      for (int x = 0; x < h_.num_vertices(); ++x) {
        tuple.push_back(x);
        kids.push_back(Type(tuple, rank - 1));
        tuple.pop_back();
      }
    }
    TypeId id = table_.Intern(rank, table_.InternAtomic(std::move(at)), std::move(kids));
    memo_.emplace(tuple, id);
    return id;
  }

 private:
  AtomicType Atomic(const std::vector<int>& tuple) {
    const int m = static_cast<int>(tuple.size());
    CheckSize(m);
    AtomicType at;
    at.size = m;
    at.eq = Rgs(tuple);
    const Vocabulary& vocab = h_.vocabulary();
    std::vector<bool> has_inside(vocab.size(), false);
    for (int x : tuple) {
      for (EdgeId e : h_.Incident(x)) {
        if (has_inside[h_.EdgeRelation(e)]) continue;
        bool inside = true;
        for (int y : h_.EdgeVertices(e)) {
          if (std::find(tuple.begin(), tuple.end(), y) == tuple.end()) {
            inside = false;
            break;
          }
        }
        if (inside) has_inside[h_.EdgeRelation(e)] = true;
      }
    }
    std::vector<Vertex> vs;
    for (int rel = 0; rel < vocab.size(); ++rel) {
      if (!has_inside[rel]) continue;
      ForEachTuple(m, vocab.relation(rel).arity, [&](std::span<const int> pos) {
        vs.clear();
        for (int p : pos) vs.push_back(h_.VertexAt(tuple[p]));
        if (h_.Holds(rel, vs)) at.holds.push_back(AtomCode(rel, pos));
      });
    }
    std::sort(at.holds.begin(), at.holds.end());
    if (distance_) {
      for (int i = 0; i < m; ++i) {
        const std::vector<int>& d = Distances(tuple[i]);
        for (int j = 0; j < m; ++j) at.dist.push_back(d[tuple[j]]);
      }
    }
    return at;
  }

  const std::vector<int>& Distances(int x) {
    if (dist_[x].empty()) {
      int src[1] = {x};
      dist_[x] = BfsDistances(h_, src);
    }
    return dist_[x];
  }

  RankTypeTable& table_;
  const Hypergraph& h_;
  bool distance_;
  std::vector<std::vector<int>> dist_;
  std::map<std::vector<int>, TypeId> memo_;
};

}  // namespace

TypeId RankType(RankTypeTable& table, const Hypergraph& h, std::span<const Vertex> pins, int rank,
                bool distance) {
  if (rank < 0) throw Error(ErrorKind::kInvalidArgument, "negative rank");
  if (&table.vocabulary() != &h.vocabulary() && table.vocabulary().size() != h.vocabulary().size()) {
    throw Error(ErrorKind::kInvalidArgument, "type table and structure use different vocabularies");
  }
  std::vector<int> tuple;
  for (Vertex v : pins) tuple.push_back(h.IndexOrThrow(v));
  ConcreteTyper typer(table, h, distance);
  return typer.Type(tuple, rank);
}

}  // namespace sparselimit
