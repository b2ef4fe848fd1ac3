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

#include "sparselimit/hypergraph.hpp"

#include <algorithm>
#include <numeric>

namespace sparselimit {

Hypergraph::Hypergraph(VocabularyPtr vocab) : vocab_(std::move(vocab)) {
  relation_begin_.assign(vocab_->size() + 1, 0);
}

int Hypergraph::num_edges(int relation) const {
  return relation_begin_[relation + 1] - relation_begin_[relation];
}

std::optional<int> Hypergraph::IndexOf(Vertex v) const {
  if (vertices_.empty()) return std::nullopt;
  if (contiguous_) {
    std::int64_t i = static_cast<std::int64_t>(v) - vertices_.front();
    if (i < 0 || i >= num_vertices()) return std::nullopt;
    return static_cast<int>(i);
  }
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<int>(it - vertices_.begin());
}

int Hypergraph::IndexOrThrow(Vertex v) const {
  auto i = IndexOf(v);
  if (!i) throw Error(ErrorKind::kUnknownVertex, "vertex " + std::to_string(v) + " not present");
  return *i;
}

bool Hypergraph::HasCanonicalEdge(int relation, std::span<const Vertex> tuple) const {
  EdgeId lo = relation_begin_[relation];
  EdgeId hi = relation_begin_[relation + 1];
  while (lo < hi) {
    EdgeId mid = lo + (hi - lo) / 2;
    auto t = EdgeTuple(mid);
    if (std::lexicographical_compare(t.begin(), t.end(), tuple.begin(), tuple.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == relation_begin_[relation + 1]) return false;
  auto t = EdgeTuple(lo);
  return std::equal(t.begin(), t.end(), tuple.begin(), tuple.end());
}

bool Hypergraph::Holds(int relation, std::span<const Vertex> tuple) const {
  const Relation& rel = vocab_->relation(relation);
  if (static_cast<int>(tuple.size()) != rel.arity) {
    throw Error(ErrorKind::kLengthMismatch, "wrong tuple length for '" + rel.name + "'");
  }
  std::array<Vertex, kMaxArity> buf;
  std::copy(tuple.begin(), tuple.end(), buf.begin());
  std::span<Vertex> t(buf.data(), tuple.size());
  if (!CanonicalizeInPlace(rel, t)) return false;
  return HasCanonicalEdge(relation, t);
}

bool operator==(const Hypergraph& a, const Hypergraph& b) {
  if (a.vocab_ != b.vocab_ && (!a.vocab_ || !b.vocab_ || a.vocab_->name() != b.vocab_->name())) {
    return false;
  }
  return a.vertices_ == b.vertices_ && a.relation_ == b.relation_ && a.tuples_ == b.tuples_;
}

Hypergraph::Builder::Builder(VocabularyPtr vocab) : vocab_(std::move(vocab)) {}

Hypergraph::Builder& Hypergraph::Builder::AddVertex(Vertex v) {
  vertices_.push_back(v);
  return *this;
}

Hypergraph::Builder& Hypergraph::Builder::AddVertexRange(Vertex first, Vertex last_exclusive) {
  for (Vertex v = first; v < last_exclusive; ++v) vertices_.push_back(v);
  return *this;
}

bool Hypergraph::Builder::AddEdge(int relation, std::span<const Vertex> tuple) {
  if (relation < 0 || relation >= vocab_->size()) {
    throw Error(ErrorKind::kUnknownRelation, "relation index out of range");
  }
  const Relation& rel = vocab_->relation(relation);
  if (static_cast<int>(tuple.size()) != rel.arity) {
    throw Error(ErrorKind::kLengthMismatch, "tuple of length " + std::to_string(tuple.size()) +
                                                " for relation '" + rel.name + "'");
  }
  std::array<Vertex, kMaxArity> buf;
  std::copy(tuple.begin(), tuple.end(), buf.begin());
  std::span<Vertex> t(buf.data(), tuple.size());
  if (!CanonicalizeInPlace(rel, t)) return false;
  AddCanonicalEdgeUnchecked(relation, t);
  return true;
}

void Hypergraph::Builder::AddCanonicalEdgeUnchecked(int relation, std::span<const Vertex> tuple) {
  relation_.push_back(relation);
  tuples_.insert(tuples_.end(), tuple.begin(), tuple.end());
}

void Hypergraph::Builder::ReserveEdges(std::size_t edges) {
  relation_.reserve(edges);
  tuples_.reserve(edges * vocab_->MaxArity());
}

Hypergraph Hypergraph::Builder::Build() {
  Hypergraph h(vocab_);
  const std::size_t m = relation_.size();
  std::vector<std::size_t> offset(m + 1, 0);
  for (std::size_t e = 0; e < m; ++e) {
    offset[e + 1] = offset[e] + vocab_->relation(relation_[e]).arity;
  }
  if (!std::is_sorted(vertices_.begin(), vertices_.end())) {
    std::sort(vertices_.begin(), vertices_.end());
  }
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  {
    // Edge vertices that were not added explicitly.
    const bool contiguous =
        vertices_.empty() || static_cast<std::int64_t>(vertices_.back()) - vertices_.front() + 1 ==
                                 static_cast<std::int64_t>(vertices_.size());
    std::vector<Vertex> missing;
    for (Vertex v : tuples_) {
      bool present = contiguous ? (!vertices_.empty() && v >= vertices_.front() &&
                                   v <= vertices_.back())
                                : std::binary_search(vertices_.begin(), vertices_.end(), v);
      if (!present) missing.push_back(v);
    }
    if (!missing.empty()) {
      vertices_.insert(vertices_.end(), missing.begin(), missing.end());
      std::sort(vertices_.begin(), vertices_.end());
      vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    }
  }
  h.vertices_ = std::move(vertices_);
  h.contiguous_ = h.vertices_.empty() ||
                  static_cast<std::int64_t>(h.vertices_.back()) - h.vertices_.front() + 1 ==
                      static_cast<std::int64_t>(h.vertices_.size());

  auto tuple_of = [&](std::size_t e) {
    return std::span<const Vertex>(tuples_.data() + offset[e], tuples_.data() + offset[e + 1]);
  };
  auto less = [&](std::size_t a, std::size_t b) {
    if (relation_[a] != relation_[b]) return relation_[a] < relation_[b];
    auto ta = tuple_of(a);
    auto tb = tuple_of(b);
    return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
  };
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  // Pack (relation, tuple offset from the least vertex) into one word when it
  // fits; otherwise compare tuples directly.
  int bits = 1;
  if (!h.vertices_.empty()) {
    std::uint64_t span = static_cast<std::uint64_t>(
        static_cast<std::int64_t>(h.vertices_.back()) - h.vertices_.front());
    while (bits < 63 && (std::uint64_t{1} << bits) <= span) ++bits;
  }
  int rel_bits = 1;
  while ((1 << rel_bits) < vocab_->size()) ++rel_bits;
  if (m > 0 && rel_bits + bits * vocab_->MaxArity() <= 64) {
    const Vertex base = h.vertices_.front();
    const int max_arity = vocab_->MaxArity();
    std::vector<std::pair<std::uint64_t, std::size_t>> keys(m);
    for (std::size_t e = 0; e < m; ++e) {
      std::uint64_t key = static_cast<std::uint64_t>(relation_[e]);
      auto t = tuple_of(e);
      for (int i = 0; i < max_arity; ++i) {
        std::uint64_t x = i < static_cast<int>(t.size())
                              ? static_cast<std::uint64_t>(static_cast<std::int64_t>(t[i]) - base)
                              : 0;
        key = (key << bits) | x;
      }
      keys[e] = {key, e};
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < m; ++i) order[i] = keys[i].second;
  } else {
    std::sort(order.begin(), order.end(), less);
  }

  h.relation_begin_.assign(vocab_->size() + 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t e = order[i];
    if (i > 0 && !less(order[i - 1], e)) continue;  // duplicate
    h.relation_.push_back(relation_[e]);
    auto t = tuple_of(e);
    h.tuples_.insert(h.tuples_.end(), t.begin(), t.end());
    h.tuple_offset_.push_back(h.tuples_.size());
    ++h.relation_begin_[relation_[e] + 1];
  }
  for (int r = 0; r < vocab_->size(); ++r) h.relation_begin_[r + 1] += h.relation_begin_[r];

  const int n = h.num_vertices();
  const int edges = h.num_edges();
  std::vector<int> degree(n + 1, 0);
  std::vector<int> idx;
  for (EdgeId e = 0; e < edges; ++e) {
    idx.clear();
    for (Vertex v : h.EdgeTuple(e)) idx.push_back(*h.IndexOf(v));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    h.edge_vertices_.insert(h.edge_vertices_.end(), idx.begin(), idx.end());
    h.edge_vertex_offset_.push_back(static_cast<int>(h.edge_vertices_.size()));
    for (int i : idx) ++degree[i + 1];
  }
  for (int i = 0; i < n; ++i) degree[i + 1] += degree[i];
  h.incidence_offset_ = degree;
  h.incidence_.assign(degree[n], 0);
  std::vector<int> fill(degree.begin(), degree.end() - 1);
  for (EdgeId e = 0; e < edges; ++e) {
    for (int i : h.EdgeVertices(e)) h.incidence_[fill[i]++] = e;
  }
  return h;
}

std::int64_t Excess(const Hypergraph& h) {
  std::int64_t ex = -static_cast<std::int64_t>(h.num_vertices());
  for (int r = 0; r < h.vocabulary().size(); ++r) {
    ex += static_cast<std::int64_t>(h.vocabulary().relation(r).arity - 1) * h.num_edges(r);
  }
  return ex;
}

}  // namespace sparselimit
