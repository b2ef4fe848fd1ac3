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

#ifndef SPARSELIMIT_VOCABULARY_HPP_
#define SPARSELIMIT_VOCABULARY_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparselimit/errors.hpp"
#include "sparselimit/rational.hpp"

namespace sparselimit {

using Vertex = std::int32_t;

// Hard upper bound on relation arity; the configurable cap is at most this.
inline constexpr int kMaxArity = 8;
inline constexpr int kDefaultArityCap = 6;

// A permutation of positions 0..a-1. Acting on a tuple t gives the tuple
// whose i-th entry is t[perm[i]].
using Permutation = std::vector<int>;

class SymmetryGroup {
 public:
  SymmetryGroup() = default;

  // Closure of the generators under composition (the identity is always
  // included).
  static SymmetryGroup Generated(int arity, const std::vector<Permutation>& generators);
  // Takes the element list literally; validate() reports whether it is a group.
  static SymmetryGroup FromElements(int arity, std::vector<Permutation> elements);
  static SymmetryGroup Trivial(int arity);
  static SymmetryGroup Symmetric(int arity);
  // Permutations preserving the blocks {0..split-1} and {split..arity-1}.
  static SymmetryGroup BlockSymmetric(int arity, int split);

  int arity() const { return arity_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  // Identity present, closed under composition and inverse.
  bool IsGroup() const;
  bool IsValidPermutationSet() const;

 private:
  int arity_ = 0;
  std::vector<Permutation> elements_;
};

// Unordered pair of distinct positions (0-based in memory, 1-based in files).
struct PositionPair {
  int first = 0;
  int second = 0;
  friend bool operator==(const PositionPair&, const PositionPair&) = default;
};

// A repetition pattern class: partitions of the positions into d blocks,
// up to the action of the symmetry group, that avoid the anti-reflexive
// pairs. |E_R[n]| = sum over patterns of c * (n)_d.
struct OrbitPattern {
  // Block label of each position in the representative partition
  // (restricted growth string, lexicographically least in its class).
  std::vector<int> blocks;
  int distinct = 0;
  // Number of orbits whose tuples use exactly the labels 0..d-1 and fall in
  // this class. Each is stored by its canonical (lexicographically least)
  // tuple.
  std::vector<std::vector<int>> orbit_reps;
  // c = orbit_reps.size() / d!.
  Rational constant;
};

struct Relation {
  std::string name;
  int arity = 0;
  SymmetryGroup group;
  std::vector<PositionPair> antireflexive;
};

struct ValidationIssue {
  ErrorKind kind;
  std::string message;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::string name, std::vector<Relation> relations);

  const std::string& name() const { return name_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const Relation& relation(int index) const { return relations_.at(index); }
  int size() const { return static_cast<int>(relations_.size()); }
  std::optional<int> Find(std::string_view name) const;
  int MaxArity() const;

  // Empty when the vocabulary satisfies all axioms.
  std::vector<ValidationIssue> Validate(int arity_cap = kDefaultArityCap) const;
  // Throws the first validation issue.
  void ValidateOrThrow(int arity_cap = kDefaultArityCap) const;

  // Computed at construction; empty for relations whose group data is
  // malformed.
  const std::vector<OrbitPattern>& Patterns(int relation) const;

 private:
  std::string name_;
  std::vector<Relation> relations_;
  std::vector<std::vector<OrbitPattern>> patterns_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

std::vector<OrbitPattern> ComputeOrbitPatterns(const Relation& relation);

// |E_R[n]| from the pattern decomposition. Throws Overflow past 2^62.
std::uint64_t EdgeSpaceSize(const std::vector<OrbitPattern>& patterns, std::int64_t n);

// True if some anti-reflexive pair of positions carries the same vertex.
bool ViolatesAntiReflexivity(const Relation& relation, std::span<const Vertex> tuple);

// Replaces tuple by the least tuple in its orbit. Returns false (and leaves
// the tuple unspecified) when the tuple is excluded.
bool CanonicalizeInPlace(const Relation& relation, std::span<Vertex> tuple);

// Canonical orbit representative, or nullopt when excluded. Throws
// LengthMismatch on a wrong tuple length.
std::optional<std::vector<Vertex>> CanonicalEdge(const Relation& relation,
                                                 std::span<const Vertex> tuple);

// Presets: "graph", "digraph", "digraph-loops", "hypergraph<d>" (also
// "hypergraph3"), "cnf<l>" (also "cnf3").
VocabularyPtr PresetVocabulary(std::string_view name);
std::vector<std::string> PresetNames();

// JSON vocabulary files. Positions and permutation images are 1-based.
VocabularyPtr LoadVocabularyJson(const std::string& path);
VocabularyPtr ParseVocabularyJson(std::string_view text);
std::string VocabularyToJson(const Vocabulary& vocab);

// Resolves a preset name, or otherwise loads a JSON file.
VocabularyPtr ResolveVocabulary(const std::string& name_or_path);

// Densities beta_R > 0 indexed by relation.
class DensityMap {
 public:
  DensityMap() = default;
  DensityMap(const Vocabulary& vocab, double uniform);
  explicit DensityMap(std::vector<double> betas) : betas_(std::move(betas)) {}

  // "1.5" applies to every relation; "E=1.5,F=2" sets each by name.
  static DensityMap Parse(const Vocabulary& vocab, std::string_view text);

  double operator[](int relation) const { return betas_.at(relation); }
  double& operator[](int relation) { return betas_.at(relation); }
  const std::vector<double>& values() const { return betas_; }
  std::size_t size() const { return betas_.size(); }
  std::string ToString(const Vocabulary& vocab) const;

 private:
  std::vector<double> betas_;
};

}  // namespace sparselimit

#endif  // SPARSELIMIT_VOCABULARY_HPP_
