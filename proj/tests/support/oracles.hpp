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


// Brute-force reference implementations used to cross-check the library.

#ifndef SPARSELIMIT_TESTS_SUPPORT_ORACLES_HPP_
#define SPARSELIMIT_TESTS_SUPPORT_ORACLES_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sparselimit/hypergraph.hpp"
#include "sparselimit/vocabulary.hpp"

namespace sparselimit::oracle {

// Distinct canonical tuples over {1..n}, by enumerating all n^a tuples.
std::uint64_t EdgeSpaceByEnumeration(const Relation& rel, int n);

// All canonical tuples over {1..n}.
std::vector<std::vector<Vertex>> AllOrbits(const Relation& rel, int n);

// Saturation straight from the definition: every non-empty proper vertex
// subset induces strictly smaller excess.
bool IsSaturated(const Hypergraph& h);

// Maximal saturated sub-hypergraph of equal excess of a connected h, found
// as the smallest vertex set whose induced excess equals ex(h). Empty when
// ex(h) < 0.
Hypergraph MaximalSaturated(const Hypergraph& h);

// Minimal connected sub-hypergraph containing `base` and the marked
// vertices, by enumerating edge subsets. Per component like Center.
Hypergraph CenterByEnumeration(const Hypergraph& h, const std::vector<Vertex>& marked);

// Minimum number of edges of a connected sub-hypergraph containing u and v.
std::optional<int> DistanceByEnumeration(const Hypergraph& h, Vertex u, Vertex v);

// Random connected hypergraph with at most max_vertices vertices.
Hypergraph RandomConnected(const VocabularyPtr& vocab, int max_vertices, std::mt19937_64& rng);

// Random rooted tree with up to max_vertices vertices (root is vertex 1).
Hypergraph RandomTree(const VocabularyPtr& vocab, int max_vertices, std::mt19937_64& rng);

// Truth table over variables 1..n; literals are signed variable indices.
bool SatByTruthTable(const std::vector<std::vector<int>>& clauses, int n);

}  // namespace sparselimit::oracle

#endif  // SPARSELIMIT_TESTS_SUPPORT_ORACLES_HPP_
