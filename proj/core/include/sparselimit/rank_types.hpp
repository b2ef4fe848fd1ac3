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


#ifndef SPARSELIMIT_RANK_TYPES_HPP_
#define SPARSELIMIT_RANK_TYPES_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparselimit/formula.hpp"
#include "sparselimit/hypergraph.hpp"

namespace sparselimit {

using TypeId = std::int32_t;

// Quantifier-free description of a pinned tuple.
struct AtomicType {
  int size = 0;
  // Restricted growth string of the equality pattern.
  std::vector<std::int8_t> eq;
  // Sorted codes of the (relation, position tuple) atoms that hold.
  std::vector<std::uint64_t> holds;
  // Row-major pairwise Gaifman distances; empty for plain types.
  std::vector<std::int32_t> dist;
};

constexpr int kMaxTypePositions = 15;

std::uint64_t AtomCode(int relation, std::span<const int> positions);

// Interning table of rank-j types (Hintikka types) of pinned structures.
// A rank-j type is its atomic type plus the set of rank-(j-1) types of all
// one-vertex extensions; two pinned structures get the same id iff the
// Duplicator wins the j-round game between them. Ids are only comparable
// within one table.
//
// Besides computing types of concrete structures, the table composes types
// of disjoint unions and of gluings along pinned vertices, and decides
// formulas of quantifier rank at most j on a type.
class RankTypeTable {
 public:
  explicit RankTypeTable(VocabularyPtr vocab);

  const Vocabulary& vocabulary() const { return *vocab_; }

  int rank(TypeId t) const { return nodes_[t].rank; }
  int size(TypeId t) const { return atomics_[nodes_[t].atomic].size; }
  const AtomicType& atomic(TypeId t) const { return atomics_[nodes_[t].atomic]; }
  std::span<const TypeId> children(TypeId t) const { return nodes_[t].children; }
  std::size_t num_types() const { return nodes_.size(); }

  int InternAtomic(AtomicType a);
  TypeId Intern(int rank, int atomic, std::vector<TypeId> children);

  // Type of the structure obtained from structures of types a and b by
  // identifying pin p of a with pin q of b for every (p, q) in shared and
  // taking the disjoint union otherwise. Pins of the result: those of a,
  // then the unshared pins of b in order. Plain types only.
  TypeId Glue(TypeId a, TypeId b, std::span<const std::pair<int, int>> shared = {});
  // The rank-(j-1) type implied by a rank-j type.
  TypeId Lower(TypeId t);
  // Type of the same structure pinned at the listed positions.
  TypeId Forget(TypeId t, std::span<const int> keep);

  // Truth of phi on any structure of type t, with variable ids bound to pin
  // positions (-1 for unbound). Throws UnboundVariable, and InvalidArgument
  // when phi nests more quantifiers than the rank allows.
  bool Satisfies(TypeId t, const Formula& phi, std::vector<int> binding = {}) const;

  // Drops the composition memos; interned types stay.
  void ClearCaches();

 private:
  struct Node {
    int rank;
    int atomic;
    std::vector<TypeId> children;
  };
  using Layout = std::vector<std::pair<std::int8_t, std::int8_t>>;
  struct GlueKey {
    TypeId a;
    TypeId b;
    std::int8_t m;
    std::array<std::int8_t, 2 * kMaxTypePositions> layout;
    bool operator==(const GlueKey&) const = default;
  };
  struct ForgetKey {
    TypeId t;
    std::int8_t m;
    std::array<std::int8_t, kMaxTypePositions> keep;
    bool operator==(const ForgetKey&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const GlueKey& k) const;
    std::size_t operator()(const ForgetKey& k) const;
  };
  std::uint64_t NodeHash(int rank, int atomic, const std::vector<TypeId>& children) const;

  TypeId GlueRec(TypeId a, TypeId b, const Layout& layout);
  TypeId ForgetRec(TypeId t, const std::vector<int>& keep);
  bool SatisfiesRec(TypeId t, const FormulaNode& node, std::vector<int>& binding) const;
  bool Holds(const AtomicType& a, int relation, std::span<const int> positions) const;

  VocabularyPtr vocab_;
  std::vector<AtomicType> atomics_;
  std::unordered_map<std::string, int> atomic_index_;
  std::vector<Node> nodes_;
  std::unordered_multimap<std::uint64_t, TypeId> node_index_;
  std::unordered_map<GlueKey, TypeId, KeyHash> glue_memo_;
  std::unordered_map<ForgetKey, TypeId, KeyHash> forget_memo_;
  std::unordered_map<TypeId, TypeId> lower_memo_;
};

// Rank-j type of (h, pins). With distance set, atomic types also record
// pairwise distances (the distance game).
TypeId RankType(RankTypeTable& table, const Hypergraph& h, std::span<const Vertex> pins, int rank,
                bool distance = false);

}  // namespace sparselimit

#endif  // SPARSELIMIT_RANK_TYPES_HPP_
