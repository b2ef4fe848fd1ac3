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


#ifndef SPARSELIMIT_EF_GAME_HPP_
#define SPARSELIMIT_EF_GAME_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sparselimit/hypergraph.hpp"

namespace sparselimit {

enum class Winner { kDuplicator, kSpoiler };

std::string_view WinnerName(Winner w);

struct EfOptions {
  // Distance game: pinned pairs must also have equal pairwise distances.
  bool distance = false;
  // Maximum number of game positions explored.
  std::int64_t budget = 100'000'000;
};

// Exact winner of the k-round Ehrenfeucht-Fraisse game starting from the
// pinned tuples, by memoized minimax over sets of pinned pairs. Throws
// LengthMismatch and BudgetExceeded.
Winner EfWinner(const Hypergraph& a, std::span<const Vertex> va, const Hypergraph& b,
                std::span<const Vertex> vb, int k, const EfOptions& options = {});

// (H1, v) ~_{k,r} (H2, u): Duplicator wins the k-round distance game on the
// induced r-neighborhoods of the tuples.
bool Similar(const Hypergraph& h1, std::span<const Vertex> v, const Hypergraph& h2,
             std::span<const Vertex> u, int k, int r, const EfOptions& options = {});

// Set version: some ordering of Y makes the tuples similar to X in its
// given order.
bool SimilarSets(const Hypergraph& h1, std::span<const Vertex> x, const Hypergraph& h2,
                 std::span<const Vertex> y, int k, int r, const EfOptions& options = {});

// (H1, X) analogous to (H2, Y) for the given partitions: every part class
// occurs equally often on both sides or at least k times on both. Throws
// InvalidArgument when the parts' r-neighborhoods are not connected and
// pairwise disjoint.
bool Analogous(const Hypergraph& h1, const std::vector<std::vector<Vertex>>& x_parts,
               const Hypergraph& h2, const std::vector<std::vector<Vertex>>& y_parts, int k,
               int r, const EfOptions& options = {});

}  // namespace sparselimit

#endif  // SPARSELIMIT_EF_GAME_HPP_
