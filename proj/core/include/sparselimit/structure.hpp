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

#ifndef SPARSELIMIT_STRUCTURE_HPP_
#define SPARSELIMIT_STRUCTURE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sparselimit/hypergraph.hpp"

namespace sparselimit {

inline constexpr int kDefaultSaturationCap = 20;
inline constexpr int kUnreached = -1;

enum class ComponentKind { kTree, kUnicycle, kDense };

struct ComponentClass {
  ComponentKind kind = ComponentKind::kTree;
  bool saturated = false;
  // A saturated unicycle.
  bool cycle = false;
};

std::string_view ComponentKindName(ComponentKind kind);

struct RootedTree {
  Hypergraph tree;
  Vertex root = 0;
};

// Breadth-first distances (in edges) from the given vertex indices. Entries
// are kUnreached beyond max_radius (negative means unbounded) or when
// disconnected.
std::vector<int> BfsDistances(const Hypergraph& h, std::span<const int> sources,
                              int max_radius = -1);

// Number of edges on a shortest connection, or nullopt for infinity.
std::optional<int> Distance(const Hypergraph& h, Vertex u, Vertex v);
// Minimum over pairs.
std::optional<int> Distance(const Hypergraph& h, std::span<const Vertex> xs,
                            std::span<const Vertex> ys);

// N(X; r) as a sorted vertex list.
std::vector<Vertex> Neighborhood(const Hypergraph& h, std::span<const Vertex> xs, int r);

// Keeps exactly the edges whose vertices all lie in U.
Hypergraph Induced(const Hypergraph& h, std::span<const Vertex> vertices);
// The given edges plus extra isolated vertices.
Hypergraph EdgeSubHypergraph(const Hypergraph& h, std::span<const EdgeId> edges,
                             std::span<const Vertex> extra_vertices = {});

// Component label per vertex index; labels are 0..count-1 in order of the
// smallest vertex.
std::vector<int> ComponentLabels(const Hypergraph& h, int* count);
std::vector<std::vector<Vertex>> ConnectedComponents(const Hypergraph& h);
bool IsConnected(const Hypergraph& h);
// Largest distance between two vertices; throws NotConnected.
int Diameter(const Hypergraph& h);

// Copy of h with every vertex id shifted by offset.
Hypergraph Shifted(const Hypergraph& h, Vertex offset);
// Union of two hypergraphs over the same vocabulary (vertex sets may
// overlap; edges are merged).
Hypergraph Union(const Hypergraph& a, const Hypergraph& b);

// Result of repeatedly cutting tree appendages: loop-free edges all of whose
// vertices but at most one have degree one. Protected vertices are never
// removed. Isolated unprotected vertices are dropped.
struct PruneResult {
  std::vector<char> edge_alive;
  std::vector<char> vertex_alive;
};
PruneResult PruneAppendages(const Hypergraph& h, std::span<const char> protected_vertex = {});

ComponentClass ClassifyComponent(const Hypergraph& h, int cap = kDefaultSaturationCap);

// Per component: the maximal saturated sub-hypergraph of equal excess
// (empty for trees), extended minimally to reach the marked vertices.
Hypergraph Center(const Hypergraph& h, std::span<const Vertex> marked = {});

// Vertices lying in a saturated sub-hypergraph with diameter at most
// diameter_bound.
std::vector<Vertex> SaturatedVertices(const Hypergraph& h, int diameter_bound);

// Induced sub-hypergraph on N(X; r), X = marked plus SaturatedVertices(h, 2r+1).
Hypergraph Core(const Hypergraph& h, std::span<const Vertex> marked, int r);

// Tr(H, marked; v). Throws Unreachable when v cannot reach the center.
RootedTree HangingTree(const Hypergraph& h, std::span<const Vertex> marked, Vertex v);
// Tr(Core(H, marked; r), marked; v).
RootedTree HangingTree(const Hypergraph& h, std::span<const Vertex> marked, Vertex v, int r);

// Tr(H, v; v; r) for many roots, reusing the saturated-vertex set.
class LocalTreeExtractor {
 public:
  LocalTreeExtractor(const Hypergraph& h, int r);
  RootedTree Extract(Vertex v) const;

 private:
  const Hypergraph& h_;
  int r_;
  std::vector<int> dist_to_saturated_;
};

// Tr(H, v; v; r) for a single root. Works on a ball around v and falls
// back to LocalTreeExtractor when the core component nears its boundary.
RootedTree LocalTree(const Hypergraph& h, Vertex v, int r);

int Radius(const RootedTree& t);

bool IsRSimple(const Hypergraph& h, int r);
// Searches connected edge sets of at most max_edges (default 4r+2) edges.
bool IsRSparse(const Hypergraph& h, int r, int max_edges = -1);

}  // namespace sparselimit

#endif  // SPARSELIMIT_STRUCTURE_HPP_
