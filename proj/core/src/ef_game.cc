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


#include "sparselimit/ef_game.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>

#include "sparselimit/errors.hpp"
#include "sparselimit/structure.hpp"

namespace sparselimit {
namespace {

std::vector<std::vector<int>> AllPairsDistances(const Hypergraph& h) {
  std::vector<std::vector<int>> d(h.num_vertices());
  for (int i = 0; i < h.num_vertices(); ++i) {
    int src[1] = {i};
    d[i] = BfsDistances(h, src);
  }
  return d;
}

class Game {
 public:
  Game(const Hypergraph& a, const Hypergraph& b, const EfOptions& opt)
      : h_{&a, &b}, opt_(opt) {
    for (int s = 0; s < 2; ++s) {
      map_[s].assign(h_[s]->num_vertices(), -1);
      if (opt.distance) dist_[s] = AllPairsDistances(*h_[s]);
    }
  }

  // Adds the pair and reports whether the position is still a partial
  // isomorphism. On false the pair is not recorded.
  bool Push(int x, int y) {
    if (map_[0][x] >= 0 || map_[1][y] >= 0) {
      if (map_[0][x] != y || map_[1][y] != x) return false;
      pairs_.push_back({x, y});
      dup_.push_back(true);
      return true;
    }
    map_[0][x] = y;
    map_[1][y] = x;
    if (!Consistent(x, y)) {
      map_[0][x] = -1;
      map_[1][y] = -1;
      return false;
    }
    pairs_.push_back({x, y});
    dup_.push_back(false);
    return true;
  }

  void Pop() {
    auto [x, y] = pairs_.back();
    if (!dup_.back()) {
      map_[0][x] = -1;
      map_[1][y] = -1;
    }
    pairs_.pop_back();
    dup_.pop_back();
  }

  bool DuplicatorWins(int rounds) {
    if (rounds == 0) return true;
    std::string key = Key(rounds);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (++explored_ > opt_.budget) {
      throw Error(ErrorKind::kBudgetExceeded, "EF game exceeded its position budget");
    }
    bool result = true;
    for (int side = 0; side < 2 && result; ++side) {
      const int other = 1 - side;
      for (int x = 0; x < h_[side]->num_vertices() && result; ++x) {
        if (map_[side][x] >= 0) continue;  // replaying a pinned vertex changes nothing
        bool answered = false;
        for (int y = 0; y < h_[other]->num_vertices() && !answered; ++y) {
          if (map_[other][y] >= 0) continue;
          bool ok = side == 0 ? Push(x, y) : Push(y, x);
          if (!ok) continue;
          answered = DuplicatorWins(rounds - 1);
          Pop();
        }
        if (!answered) result = false;
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  bool Consistent(int x, int y) {
    for (int s = 0; s < 2; ++s) {
      const Hypergraph& from = *h_[s];
      const Hypergraph& to = *h_[1 - s];
      int v = s == 0 ? x : y;
      for (EdgeId e : from.Incident(v)) {
        std::array<Vertex, kMaxArity> img;
        auto t = from.EdgeTuple(e);
        bool inside = true;
        for (std::size_t i = 0; i < t.size(); ++i) {
          int idx = *from.IndexOf(t[i]);
          int m = map_[s][idx];
          if (m < 0) {
            inside = false;
            break;
          }
          img[i] = to.VertexAt(m);
        }
        if (inside && !to.Holds(from.EdgeRelation(e), std::span<const Vertex>(img.data(), t.size()))) {
          return false;
        }
      }
    }
    if (opt_.distance) {
      for (auto [px, py] : pairs_) {
        if (dist_[0][x][px] != dist_[1][y][py]) return false;
      }
    }
    return true;
  }

  std::string Key(int rounds) const {
    std::vector<std::pair<int, int>> sorted = pairs_;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::string key(reinterpret_cast<const char*>(&rounds), sizeof(int));
    key.append(reinterpret_cast<const char*>(sorted.data()), sorted.size() * sizeof(sorted[0]));
    return key;
  }

  const Hypergraph* h_[2];
  EfOptions opt_;
  std::vector<int> map_[2];
  std::vector<std::vector<int>> dist_[2];
  std::vector<std::pair<int, int>> pairs_;
  std::vector<bool> dup_;
  std::unordered_map<std::string, bool> memo_;
  std::int64_t explored_ = 0;
};

}  // namespace

std::string_view WinnerName(Winner w) {
  return w == Winner::kDuplicator ? "Duplicator" : "Spoiler";
}

Winner EfWinner(const Hypergraph& a, std::span<const Vertex> va, const Hypergraph& b,
                std::span<const Vertex> vb, int k, const EfOptions& options) {
  if (va.size() != vb.size()) {
    throw Error(ErrorKind::kLengthMismatch, "pinned tuples have different lengths");
  }
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "negative round count");
  Game g(a, b, options);
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (!g.Push(a.IndexOrThrow(va[i]), b.IndexOrThrow(vb[i]))) return Winner::kSpoiler;
  }
  return g.DuplicatorWins(k) ? Winner::kDuplicator : Winner::kSpoiler;
}

bool Similar(const Hypergraph& h1, std::span<const Vertex> v, const Hypergraph& h2,
             std::span<const Vertex> u, int k, int r, const EfOptions& options) {
  Hypergraph n1 = Induced(h1, Neighborhood(h1, v, r));
  Hypergraph n2 = Induced(h2, Neighborhood(h2, u, r));
  EfOptions opt = options;
  opt.distance = true;
  return EfWinner(n1, v, n2, u, k, opt) == Winner::kDuplicator;
}

bool SimilarSets(const Hypergraph& h1, std::span<const Vertex> x, const Hypergraph& h2,
                 std::span<const Vertex> y, int k, int r, const EfOptions& options) {
  if (x.size() != y.size()) return false;
  std::vector<Vertex> perm(y.begin(), y.end());
  std::sort(perm.begin(), perm.end());
  do {
    if (Similar(h1, x, h2, perm, k, r, options)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool Analogous(const Hypergraph& h1, const std::vector<std::vector<Vertex>>& x_parts,
               const Hypergraph& h2, const std::vector<std::vector<Vertex>>& y_parts, int k,
               int r, const EfOptions& options) {
  auto check_parts = [&](const Hypergraph& h, const std::vector<std::vector<Vertex>>& parts) {
    std::vector<int> owner(h.num_vertices(), -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      Hypergraph nb = Induced(h, Neighborhood(h, parts[i], r));
      if (!IsConnected(nb)) {
        throw Error(ErrorKind::kInvalidArgument, "part neighborhood is not connected");
      }
      for (Vertex v : nb.vertices()) {
        int& o = owner[h.IndexOrThrow(v)];
        if (o >= 0) throw Error(ErrorKind::kInvalidArgument, "part neighborhoods overlap");
        o = static_cast<int>(i);
      }
    }
  };
  check_parts(h1, x_parts);
  check_parts(h2, y_parts);
  auto count = [&](const Hypergraph& hz, const std::vector<Vertex>& z, const Hypergraph& h,
                   const std::vector<std::vector<Vertex>>& parts) {
    int c = 0;
    for (const auto& p : parts) {
      if (SimilarSets(hz, z, h, p, k, r, options)) ++c;
    }
    return c;
  };
  for (int side = 0; side < 2; ++side) {
    const Hypergraph& hz = side == 0 ? h1 : h2;
    const auto& zs = side == 0 ? x_parts : y_parts;
    for (const auto& z : zs) {
      int c1 = count(hz, z, h1, x_parts);
      int c2 = count(hz, z, h2, y_parts);
      if (c1 != c2 && (c1 < k || c2 < k)) return false;
    }
  }
  return true;
}

}  // namespace sparselimit
