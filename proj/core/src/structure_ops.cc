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

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sparselimit/structure.hpp"

namespace sparselimit {
namespace {

constexpr EdgeId kNoEdge = -1;

std::vector<int> IndicesOf(const Hypergraph& h, std::span<const Vertex> vs) {
  std::vector<int> out;
  out.reserve(vs.size());
  for (Vertex v : vs) out.push_back(h.IndexOrThrow(v));
  return out;
}

// Breadth-first search over alive edges only.
std::vector<int> BfsMasked(const Hypergraph& h, std::span<const int> sources, int max_radius,
                           const std::vector<char>* edge_alive) {
  std::vector<int> dist(h.num_vertices(), kUnreached);
  std::vector<char> edge_seen(h.num_edges(), 0);
  std::deque<int> queue;
  for (int s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (max_radius >= 0 && dist[x] >= max_radius) continue;
    for (EdgeId e : h.Incident(x)) {
      if (edge_seen[e] || (edge_alive && !(*edge_alive)[e])) continue;
      edge_seen[e] = 1;
      for (int y : h.EdgeVertices(e)) {
        if (dist[y] == kUnreached) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return dist;
}

// Sparse breadth-first search for small balls in large hypergraphs.
std::unordered_map<int, int> LocalBfs(const Hypergraph& h, int source, int max_radius) {
  std::unordered_map<int, int> dist{{source, 0}};
  std::unordered_set<EdgeId> edge_seen;
  std::vector<int> frontier{source};
  for (int d = 0; d < max_radius && !frontier.empty(); ++d) {
    std::vector<int> next;
    for (int x : frontier) {
      for (EdgeId e : h.Incident(x)) {
        if (!edge_seen.insert(e).second) continue;
        for (int y : h.EdgeVertices(e)) {
          if (dist.emplace(y, d + 1).second) next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

bool AllAlive(const PruneResult& p) {
  return std::all_of(p.edge_alive.begin(), p.edge_alive.end(), [](char c) { return c; }) &&
         std::all_of(p.vertex_alive.begin(), p.vertex_alive.end(), [](char c) { return c; });
}

bool IsSaturatedConnected(const Hypergraph& h) {
  return Excess(h) >= 0 && AllAlive(PruneAppendages(h));
}

}  // namespace

std::string_view ComponentKindName(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::kTree:
      return "Tree";
    case ComponentKind::kUnicycle:
      return "Unicycle";
    case ComponentKind::kDense:
      return "Dense";
  }
  return "?";
}

std::vector<int> BfsDistances(const Hypergraph& h, std::span<const int> sources, int max_radius) {
  return BfsMasked(h, sources, max_radius, nullptr);
}

std::optional<int> Distance(const Hypergraph& h, Vertex u, Vertex v) {
  Vertex a[1] = {u};
  Vertex b[1] = {v};
  return Distance(h, a, b);
}

std::optional<int> Distance(const Hypergraph& h, std::span<const Vertex> xs,
                            std::span<const Vertex> ys) {
  auto src = IndicesOf(h, xs);
  auto dst = IndicesOf(h, ys);
  auto dist = BfsDistances(h, src);
  std::optional<int> best;
  for (int y : dst) {
    if (dist[y] != kUnreached && (!best || dist[y] < *best)) best = dist[y];
  }
  return best;
}

std::vector<Vertex> Neighborhood(const Hypergraph& h, std::span<const Vertex> xs, int r) {
  auto src = IndicesOf(h, xs);
  auto dist = BfsDistances(h, src, r);
  std::vector<Vertex> out;
  for (int i = 0; i < h.num_vertices(); ++i) {
    if (dist[i] != kUnreached) out.push_back(h.VertexAt(i));
  }
  return out;
}

Hypergraph Induced(const Hypergraph& h, std::span<const Vertex> vertices) {
  std::vector<char> in(h.num_vertices(), 0);
  for (Vertex v : vertices) in[h.IndexOrThrow(v)] = 1;
  Hypergraph::Builder b(h.vocabulary_ptr());
  for (int i = 0; i < h.num_vertices(); ++i) {
    if (in[i]) b.AddVertex(h.VertexAt(i));
  }
  std::vector<char> seen(h.num_edges(), 0);
  for (int i = 0; i < h.num_vertices(); ++i) {
    if (!in[i]) continue;
    for (EdgeId e : h.Incident(i)) {
      if (seen[e]) continue;
      seen[e] = 1;
      auto vs = h.EdgeVertices(e);
      if (std::all_of(vs.begin(), vs.end(), [&](int x) { return in[x]; })) {
        b.AddCanonicalEdgeUnchecked(h.EdgeRelation(e), h.EdgeTuple(e));
      }
    }
  }
  return b.Build();
}

Hypergraph EdgeSubHypergraph(const Hypergraph& h, std::span<const EdgeId> edges,
                             std::span<const Vertex> extra_vertices) {
  Hypergraph::Builder b(h.vocabulary_ptr());
  for (Vertex v : extra_vertices) b.AddVertex(v);
  for (EdgeId e : edges) b.AddCanonicalEdgeUnchecked(h.EdgeRelation(e), h.EdgeTuple(e));
  return b.Build();
}

std::vector<int> ComponentLabels(const Hypergraph& h, int* count) {
  std::vector<int> label(h.num_vertices(), -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < h.num_vertices(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (EdgeId e : h.Incident(x)) {
        for (int y : h.EdgeVertices(e)) {
          if (label[y] < 0) {
            label[y] = next;
            stack.push_back(y);
          }
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

std::vector<std::vector<Vertex>> ConnectedComponents(const Hypergraph& h) {
  int count = 0;
  auto label = ComponentLabels(h, &count);
  std::vector<std::vector<Vertex>> out(count);
  for (int i = 0; i < h.num_vertices(); ++i) out[label[i]].push_back(h.VertexAt(i));
  return out;
}

bool IsConnected(const Hypergraph& h) {
  int count = 0;
  ComponentLabels(h, &count);
  return count == 1;
}

int Diameter(const Hypergraph& h) {
  if (!IsConnected(h)) throw Error(ErrorKind::kNotConnected, "diameter of a disconnected hypergraph");
  int best = 0;
  for (int i = 0; i < h.num_vertices(); ++i) {
    int src[1] = {i};
    auto d = BfsDistances(h, src);
    best = std::max(best, *std::max_element(d.begin(), d.end()));
  }
  return best;
}

Hypergraph Shifted(const Hypergraph& h, Vertex offset) {
  Hypergraph::Builder b(h.vocabulary_ptr());
  for (Vertex v : h.vertices()) b.AddVertex(v + offset);
  std::vector<Vertex> t;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    t.assign(h.EdgeTuple(e).begin(), h.EdgeTuple(e).end());
    for (auto& v : t) v += offset;
    b.AddCanonicalEdgeUnchecked(h.EdgeRelation(e), t);
  }
  return b.Build();
}

Hypergraph Union(const Hypergraph& a, const Hypergraph& b) {
  Hypergraph::Builder out(a.vocabulary_ptr());
  for (const Hypergraph* h : {&a, &b}) {
    for (Vertex v : h->vertices()) out.AddVertex(v);
    for (EdgeId e = 0; e < h->num_edges(); ++e) {
      out.AddCanonicalEdgeUnchecked(h->EdgeRelation(e), h->EdgeTuple(e));
    }
  }
  return out.Build();
}

PruneResult PruneAppendages(const Hypergraph& h, std::span<const char> protected_vertex) {
  const int n = h.num_vertices();
  const int m = h.num_edges();
  auto is_protected = [&](int v) { return !protected_vertex.empty() && protected_vertex[v]; };
  PruneResult res;
  res.edge_alive.assign(m, 1);
  res.vertex_alive.assign(n, 1);
  std::vector<int> degree(n);
  for (int i = 0; i < n; ++i) degree[i] = h.Degree(i);
  std::vector<EdgeId> queue(m);
  for (EdgeId e = 0; e < m; ++e) queue[e] = e;
  while (!queue.empty()) {
    EdgeId e = queue.back();
    queue.pop_back();
    if (!res.edge_alive[e] || h.HasLoop(e)) continue;
    auto vs = h.EdgeVertices(e);
    int keep = -1;
    int kept = 0;
    for (int v : vs) {
      if (degree[v] >= 2 || is_protected(v)) {
        ++kept;
        keep = v;
      }
    }
    if (kept >= 2) continue;
    if (kept == 0) keep = vs.front();
    res.edge_alive[e] = 0;
    for (int v : vs) {
      --degree[v];
      if (v != keep) res.vertex_alive[v] = 0;
    }
    for (EdgeId f : h.Incident(keep)) {
      if (res.edge_alive[f]) queue.push_back(f);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 0 && !is_protected(v)) res.vertex_alive[v] = 0;
  }
  return res;
}

ComponentClass ClassifyComponent(const Hypergraph& h, int cap) {
  if (h.num_vertices() == 0 || !IsConnected(h)) {
    throw Error(ErrorKind::kNotConnected, "component classification needs a connected hypergraph");
  }
  if (h.num_vertices() > cap) {
    throw Error(ErrorKind::kTooLargeForSaturation,
                std::to_string(h.num_vertices()) + " vertices exceed the saturation cap of " +
                    std::to_string(cap));
  }
  ComponentClass c;
  std::int64_t ex = Excess(h);
  c.kind = ex < 0 ? ComponentKind::kTree : ex == 0 ? ComponentKind::kUnicycle : ComponentKind::kDense;
  c.saturated = ex >= 0 && AllAlive(PruneAppendages(h));
  c.cycle = c.saturated && ex == 0;
  return c;
}

Hypergraph Center(const Hypergraph& h, std::span<const Vertex> marked) {
  std::vector<char> prot(h.num_vertices(), 0);
  for (Vertex v : marked) prot[h.IndexOrThrow(v)] = 1;
  PruneResult p = PruneAppendages(h, prot);
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (p.edge_alive[e]) edges.push_back(e);
  }
  std::vector<Vertex> verts;
  for (int i = 0; i < h.num_vertices(); ++i) {
    if (p.vertex_alive[i]) verts.push_back(h.VertexAt(i));
  }
  return EdgeSubHypergraph(h, edges, verts);
}

std::vector<Vertex> SaturatedVertices(const Hypergraph& h, int diameter_bound) {
  const int n = h.num_vertices();
  const int bound = diameter_bound;
  PruneResult p = PruneAppendages(h);
  std::vector<char> in_x(n, 0);
  auto mark_edges = [&](std::span<const EdgeId> edges) {
    for (EdgeId e : edges) {
      for (int v : h.EdgeVertices(e)) in_x[v] = 1;
    }
  };

  // Edges with a repeated vertex are saturated on their own.
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (h.HasLoop(e)) {
      EdgeId one[1] = {e};
      mark_edges(one);
    }
  }

  // Remnant components are the maximal saturated parts of their components;
  // small ones are checked directly.
  {
    std::vector<int> label(n, -1);
    constexpr int kDirectCheckLimit = 2000;
    for (int s = 0; s < n; ++s) {
      if (!p.vertex_alive[s] || label[s] >= 0) continue;
      std::vector<int> comp{s};
      std::vector<EdgeId> comp_edges;
      label[s] = s;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        for (EdgeId e : h.Incident(comp[i])) {
          if (!p.edge_alive[e]) continue;
          for (int y : h.EdgeVertices(e)) {
            if (label[y] < 0) {
              label[y] = s;
              comp.push_back(y);
            }
          }
        }
      }
      if (static_cast<int>(comp.size()) > kDirectCheckLimit) continue;
      for (int x : comp) {
        for (EdgeId e : h.Incident(x)) {
          if (p.edge_alive[e] && h.EdgeVertices(e).front() == x) comp_edges.push_back(e);
        }
      }
      auto dist0 = BfsMasked(h, std::span<const int>(&comp[0], 1), bound + 1, &p.edge_alive);
      bool within = true;
      for (int x : comp) {
        if (dist0[x] == kUnreached) within = false;
      }
      if (!within) continue;
      Hypergraph sub = EdgeSubHypergraph(h, comp_edges);
      if (Diameter(sub) <= bound) mark_edges(comp_edges);
    }
  }

  // Short cycles through every remnant vertex.
  for (int u = 0; u < n; ++u) {
    if (!p.vertex_alive[u] || in_x[u]) continue;
    std::unordered_map<int, int> dist{{u, 0}};
    std::unordered_map<int, EdgeId> parent_edge{{u, kNoEdge}};
    std::unordered_map<int, int> parent{{u, -1}};
    std::unordered_map<int, EdgeId> branch{{u, kNoEdge}};
    struct Closing {
      int x;
      EdgeId e;
      int y;
      int length;
    };
    std::vector<Closing> closings;
    std::vector<int> frontier{u};
    for (int d = 0; d <= bound && !frontier.empty(); ++d) {
      std::vector<int> next;
      for (int x : frontier) {
        for (EdgeId e : h.Incident(x)) {
          if (!p.edge_alive[e] || h.HasLoop(e)) continue;
          if (e == parent_edge[x]) continue;
          EdgeId bx = x == u ? e : branch[x];
          for (int y : h.EdgeVertices(e)) {
            if (y == x) continue;
            auto it = dist.find(y);
            if (it == dist.end()) {
              dist[y] = d + 1;
              parent_edge[y] = e;
              parent[y] = x;
              branch[y] = bx;
              next.push_back(y);
            } else if (branch[y] != bx && parent_edge[y] != e) {
              closings.push_back({x, e, y, d + it->second + 1});
            }
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(closings.begin(), closings.end(),
              [](const Closing& a, const Closing& b) { return a.length < b.length; });
    for (const Closing& c : closings) {
      std::vector<EdgeId> edges{c.e};
      for (int z : {c.x, c.y}) {
        while (z != u) {
          edges.push_back(parent_edge[z]);
          z = parent[z];
        }
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      Hypergraph sub = EdgeSubHypergraph(h, edges);
      if (IsSaturatedConnected(sub) && Diameter(sub) <= bound) {
        mark_edges(edges);
        break;
      }
    }
  }

  std::vector<Vertex> out;
  for (int i = 0; i < n; ++i) {
    if (in_x[i]) out.push_back(h.VertexAt(i));
  }
  return out;
}

Hypergraph Core(const Hypergraph& h, std::span<const Vertex> marked, int r) {
  if (r < 0) throw Error(ErrorKind::kInvalidArgument, "radius must be non-negative");
  std::vector<Vertex> x = SaturatedVertices(h, 2 * r + 1);
  x.insert(x.end(), marked.begin(), marked.end());
  return Induced(h, Neighborhood(h, x, r));
}

RootedTree HangingTree(const Hypergraph& h, std::span<const Vertex> marked, Vertex v) {
  int vi = h.IndexOrThrow(v);
  Hypergraph center = Center(h, marked);
  std::vector<int> sources;
  for (Vertex c : center.vertices()) sources.push_back(h.IndexOrThrow(c));
  auto dc = BfsDistances(h, sources);
  if (dc[vi] == kUnreached) {
    throw Error(ErrorKind::kUnreachable, "vertex " + std::to_string(v) + " cannot reach the center");
  }
  int src[1] = {vi};
  auto dv = BfsDistances(h, src);
  std::vector<Vertex> keep;
  for (int i = 0; i < h.num_vertices(); ++i) {
    if (dv[i] != kUnreached && dc[i] == dc[vi] + dv[i]) keep.push_back(h.VertexAt(i));
  }
  RootedTree t{Induced(h, keep), v};
  if (Excess(t.tree) != -1 || !IsConnected(t.tree)) {
    throw Error(ErrorKind::kNotATree, "hanging tree at " + std::to_string(v) + " is not a tree");
  }
  return t;
}

RootedTree HangingTree(const Hypergraph& h, std::span<const Vertex> marked, Vertex v, int r) {
  Hypergraph core = Core(h, marked, r);
  if (!core.Contains(v)) {
    throw Error(ErrorKind::kUnreachable, "vertex " + std::to_string(v) + " is outside the core");
  }
  return HangingTree(core, marked, v);
}

LocalTreeExtractor::LocalTreeExtractor(const Hypergraph& h, int r) : h_(h), r_(r) {
  std::vector<int> sources;
  for (Vertex x : SaturatedVertices(h, 2 * r + 1)) sources.push_back(h.IndexOrThrow(x));
  dist_to_saturated_ = BfsDistances(h, sources, r);
}

RootedTree LocalTreeExtractor::Extract(Vertex v) const {
  const int vi = h_.IndexOrThrow(v);
  auto ball = LocalBfs(h_, vi, r_);
  auto in_core = [&](int x) {
    return dist_to_saturated_[x] != kUnreached || ball.count(x) > 0;
  };
  // Component of v inside the induced core.
  std::unordered_set<int> seen{vi};
  std::unordered_set<EdgeId> edge_seen;
  std::vector<int> stack{vi};
  std::vector<EdgeId> edges;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (EdgeId e : h_.Incident(x)) {
      if (!edge_seen.insert(e).second) continue;
      auto vs = h_.EdgeVertices(e);
      if (!std::all_of(vs.begin(), vs.end(), in_core)) continue;
      edges.push_back(e);
      for (int y : vs) {
        if (seen.insert(y).second) stack.push_back(y);
      }
    }
  }
  Vertex self[1] = {v};
  Hypergraph comp = EdgeSubHypergraph(h_, edges, self);
  if (Excess(comp) == -1) return RootedTree{std::move(comp), v};
  return HangingTree(comp, self, v);
}

RootedTree LocalTree(const Hypergraph& h, Vertex v, int r) {
  // Saturation of x is decided inside N(x; 2r+1), so statuses are exact up
  // to distance R - (2r+1), and core membership up to R - (3r+1).
  const int big = 4 * r + 4;
  const int safe = big - (3 * r + 1) - 1;
  Vertex self[1] = {v};
  auto ball = Neighborhood(h, self, big);
  if (static_cast<int>(ball.size()) < h.num_vertices()) {
    Hypergraph sub = Induced(h, ball);
    RootedTree t = LocalTreeExtractor(sub, r).Extract(v);
    int src[1] = {sub.IndexOrThrow(v)};
    auto dist = BfsDistances(sub, src, safe);
    bool inside = true;
    for (Vertex x : t.tree.vertices()) {
      if (dist[sub.IndexOrThrow(x)] == kUnreached) {
        inside = false;
        break;
      }
    }
    if (inside) return t;
  }
  return LocalTreeExtractor(h, r).Extract(v);
}

int Radius(const RootedTree& t) {
  int src[1] = {t.tree.IndexOrThrow(t.root)};
  auto d = BfsDistances(t.tree, src);
  return *std::max_element(d.begin(), d.end());
}

bool IsRSimple(const Hypergraph& h, int r) {
  Hypergraph core = Core(h, {}, r);
  int count = 0;
  auto label = ComponentLabels(core, &count);
  std::vector<std::int64_t> ex(count, 0);
  for (int i = 0; i < core.num_vertices(); ++i) --ex[label[i]];
  for (EdgeId e = 0; e < core.num_edges(); ++e) {
    ex[label[core.EdgeVertices(e).front()]] += core.EdgeTuple(e).size() - 1;
  }
  return std::all_of(ex.begin(), ex.end(), [](std::int64_t x) { return x == 0; });
}

bool IsRSparse(const Hypergraph& h, int r, int max_edges) {
  if (max_edges < 0) max_edges = 4 * r + 2;
  PruneResult p = PruneAppendages(h);
  std::vector<EdgeId> alive;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (p.edge_alive[e]) alive.push_back(e);
  }
  constexpr std::size_t kSubsetBudget = 2'000'000;
  std::size_t visited = 0;
  auto is_witness = [&](const std::vector<EdgeId>& edges) {
    std::int64_t weight = 0;
    std::vector<int> verts;
    for (EdgeId e : edges) {
      weight += static_cast<std::int64_t>(h.EdgeTuple(e).size()) - 1;
      verts.insert(verts.end(), h.EdgeVertices(e).begin(), h.EdgeVertices(e).end());
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (weight - static_cast<std::int64_t>(verts.size()) <= 0) return false;
    return Diameter(EdgeSubHypergraph(h, edges)) <= r;
  };
  // Connected edge sets grown from their least edge, deduplicated per level.
  for (EdgeId root : alive) {
    std::vector<std::vector<EdgeId>> level{{root}};
    for (int size = 1; !level.empty(); ++size) {
      std::set<std::vector<EdgeId>> next;
      for (const auto& set : level) {
        if (++visited > kSubsetBudget) {
          throw Error(ErrorKind::kCapExceeded, "sparseness search exceeded its budget");
        }
        if (is_witness(set)) return false;
        if (size >= max_edges) continue;
        for (EdgeId e : set) {
          for (int v : h.EdgeVertices(e)) {
            for (EdgeId g : h.Incident(v)) {
              if (g <= root || !p.edge_alive[g] ||
                  std::binary_search(set.begin(), set.end(), g)) {
                continue;
              }
              std::vector<EdgeId> bigger = set;
              bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), g), g);
              next.insert(std::move(bigger));
            }
          }
        }
      }
      level.assign(next.begin(), next.end());
    }
  }
  return true;
}

}  // namespace sparselimit
