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


#ifndef SPARSELIMIT_TREE_TYPES_HPP_
#define SPARSELIMIT_TREE_TYPES_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "sparselimit/structure.hpp"
#include "sparselimit/vocabulary.hpp"

namespace sparselimit {

// Position colors of a pattern: kRootColor marks the root position, any
// other value c is the tree type c - 1 of the subtree hanging there.
constexpr int kRootColor = 0;

// A single initial edge: relation plus the position coloring, least in its
// orbit under the relation's symmetry group.
struct Pattern {
  int relation = 0;
  std::vector<int> colors;
  // Group elements preserving the coloring.
  int aut = 1;
  // 1 + the largest child radius.
  int radius = 1;
};

// A ~k class of rooted trees, given by its signature: sorted (pattern, count)
// pairs with counts 1..k, where k stands for "at least k". Patterns absent
// from the signature have count 0.
struct TreeType {
  std::vector<std::pair<int, int>> signature;
  int radius = 0;
};

// Interning registry of ~k tree types and patterns for one vocabulary and
// one k. Type 0 is the radius-0 type. Lazy interning is thread-safe;
// Enumerate adds every type up to a radius.
class TypeRegistry {
 public:
  TypeRegistry(VocabularyPtr vocab, int k);

  const Vocabulary& vocabulary() const { return *vocab_; }
  const VocabularyPtr& vocabulary_ptr() const { return vocab_; }
  int k() const { return k_; }

  static constexpr int kRadiusZeroType = 0;

  // Throws NotATree.
  int TypeOf(const RootedTree& tree);

  int InternPattern(int relation, std::vector<int> colors);
  int InternType(std::vector<std::pair<int, int>> signature);

  int num_types() const;
  int num_patterns() const;
  TreeType type(int id) const;
  Pattern pattern(int id) const;

  // Interns every type of radius <= r. Returns false, leaving a partial
  // registry, when more than cap types would be needed.
  bool Enumerate(int r, std::size_t cap);
  // Radius up to which the registry is known to be complete (-1 if none).
  int complete_radius() const;

  // Types of radius <= r, in id order. Throws PartialRegistry unless
  // complete at r.
  std::vector<int> TypesUpTo(int r) const;
  // Patterns with all child colors of radius <= r - 1. Throws
  // PartialRegistry unless complete at r - 1.
  std::vector<int> PatternsUpTo(int r) const;

  // Minimal tree of the given type, root at vertex 1, vertices 1..m.
  RootedTree Representative(int id) const;

  std::string PatternString(int id) const;
  std::string SignatureString(int id) const;

 private:
  int InternPatternLocked(int relation, std::vector<int> colors);
  int InternTypeLocked(std::vector<std::pair<int, int>> signature);
  void AddRepresentative(int id, Hypergraph::Builder& b, Vertex root, Vertex& next) const;

  VocabularyPtr vocab_;
  int k_;
  mutable std::mutex mu_;
  std::vector<Pattern> patterns_;
  std::map<std::pair<int, std::vector<int>>, int> pattern_index_;
  std::vector<TreeType> types_;
  std::map<std::vector<std::pair<int, int>>, int> type_index_;
  int complete_radius_ = 0;
};

using TypeRegistryPtr = std::shared_ptr<TypeRegistry>;

// Full registry of types with radius <= r. Throws CapExceeded.
TypeRegistryPtr EnumerateTreeTypes(VocabularyPtr vocab, int k, int r, std::size_t cap);

// Least color vector in the orbit under the group, and the number of group
// elements fixing the given coloring.
std::vector<int> CanonicalColoring(const SymmetryGroup& group, const std::vector<int>& colors);
int ColoringStabilizer(const SymmetryGroup& group, const std::vector<int>& colors);

}  // namespace sparselimit

#endif  // SPARSELIMIT_TREE_TYPES_HPP_
