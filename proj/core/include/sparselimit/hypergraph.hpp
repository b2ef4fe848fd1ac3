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

#ifndef SPARSELIMIT_HYPERGRAPH_HPP_
#define SPARSELIMIT_HYPERGRAPH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparselimit/vocabulary.hpp"

namespace sparselimit {

using EdgeId = std::int32_t;

// A finite sigma-structure viewed as a multi-hypergraph: a vertex set of
// arbitrary integer ids and, per relation, a set of canonical tuples.
// Immutable once built.
class Hypergraph {
 public:
  class Builder;

  Hypergraph() = default;
  explicit Hypergraph(VocabularyPtr vocab);

  const Vocabulary& vocabulary() const { return *vocab_; }
  const VocabularyPtr& vocabulary_ptr() const { return vocab_; }

  // Sorted vertex ids.
  std::span<const Vertex> vertices() const { return vertices_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(relation_.size()); }
  int num_edges(int relation) const;
  bool empty() const { return vertices_.empty(); }

  bool Contains(Vertex v) const { return IndexOf(v).has_value(); }
  // Position of v in vertices(), or nullopt.
  std::optional<int> IndexOf(Vertex v) const;
  // Throws UnknownVertex.
  int IndexOrThrow(Vertex v) const;
  Vertex VertexAt(int index) const { return vertices_[index]; }

  int EdgeRelation(EdgeId e) const { return relation_[e]; }
  std::span<const Vertex> EdgeTuple(EdgeId e) const {
    return {tuples_.data() + tuple_offset_[e], tuples_.data() + tuple_offset_[e + 1]};
  }
  // Distinct vertex indices of the edge, in increasing order.
  std::span<const int> EdgeVertices(EdgeId e) const {
    return {edge_vertices_.data() + edge_vertex_offset_[e],
            edge_vertices_.data() + edge_vertex_offset_[e + 1]};
  }
  // True when some vertex repeats in the tuple.
  bool HasLoop(EdgeId e) const {
    return EdgeVertices(e).size() < EdgeTuple(e).size();
  }
  // Edges incident to the vertex with the given index.
  std::span<const EdgeId> Incident(int index) const {
    return {incidence_.data() + incidence_offset_[index],
            incidence_.data() + incidence_offset_[index + 1]};
  }
  int Degree(int index) const {
    return incidence_offset_[index + 1] - incidence_offset_[index];
  }

  // Membership of an already canonical tuple.
  bool HasCanonicalEdge(int relation, std::span<const Vertex> tuple) const;
  // Whether R(tuple) holds: canonicalizes first; excluded tuples are false.
  bool Holds(int relation, std::span<const Vertex> tuple) const;

  // Edges of one relation occupy a contiguous id range, sorted by tuple.
  std::pair<EdgeId, EdgeId> RelationRange(int relation) const {
    return {relation_begin_[relation], relation_begin_[relation + 1]};
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b);

 private:
  VocabularyPtr vocab_;
  std::vector<Vertex> vertices_;
  bool contiguous_ = true;
  std::vector<int> relation_;
  std::vector<std::size_t> tuple_offset_{0};
  std::vector<Vertex> tuples_;
  std::vector<int> edge_vertex_offset_{0};
  std::vector<int> edge_vertices_;
  std::vector<int> incidence_offset_{0};
  std::vector<EdgeId> incidence_;
  std::vector<EdgeId> relation_begin_{0};
};

class Hypergraph::Builder {
 public:
  explicit Builder(VocabularyPtr vocab);

  Builder& AddVertex(Vertex v);
  Builder& AddVertexRange(Vertex first, Vertex last_exclusive);
  // Canonicalizes the tuple and adds its vertices. Returns false (adding
  // nothing) when the tuple is excluded by anti-reflexivity. Duplicates are
  // merged at Build time.
  bool AddEdge(int relation, std::span<const Vertex> tuple);
  bool AddEdge(int relation, std::initializer_list<Vertex> tuple) {
    return AddEdge(relation, std::span<const Vertex>(tuple.begin(), tuple.size()));
  }
  // For tuples already known to be canonical and admissible.
  void AddCanonicalEdgeUnchecked(int relation, std::span<const Vertex> tuple);
  void ReserveEdges(std::size_t edges);

  Hypergraph Build();

 private:
  VocabularyPtr vocab_;
  std::vector<Vertex> vertices_;
  std::vector<int> relation_;
  std::vector<Vertex> tuples_;
};

// Excess: sum over edges of (arity - 1) minus the number of vertices.
std::int64_t Excess(const Hypergraph& h);

}  // namespace sparselimit

#endif  // SPARSELIMIT_HYPERGRAPH_HPP_
