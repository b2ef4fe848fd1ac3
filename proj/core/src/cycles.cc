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


#include "sparselimit/cycles.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sparselimit/errors.hpp"

namespace sparselimit {

namespace {

std::vector<int> CanonicalLabels(const Relation& rel, const std::vector<int>& labels) {
  std::vector<int> best;
  std::vector<int> cur(labels.size());
  for (const Permutation& g : rel.group.elements()) {
    for (std::size_t i = 0; i < labels.size(); ++i) cur[i] = labels[g[i]];
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

}  // namespace

std::vector<CycleLetter> CycleLetters(const Vocabulary& vocab) {
  std::vector<CycleLetter> out;
  for (int r = 0; r < vocab.size(); ++r) {
    const Relation& rel = vocab.relation(r);
    if (rel.arity < 2) continue;
    std::vector<int> labels(rel.arity);
    std::iota(labels.begin(), labels.end(), 0);
    std::vector<std::vector<int>> seen;
    do {
      std::vector<int> c = CanonicalLabels(rel, labels);
      if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(std::move(c));
    } while (std::next_permutation(labels.begin(), labels.end()));
    std::sort(seen.begin(), seen.end());
    for (auto& s : seen) out.push_back({r, std::move(s)});
  }
  return out;
}

CycleWords::CycleWords(VocabularyPtr vocab)
    : vocab_(std::move(vocab)), letters_(CycleLetters(*vocab_)) {}

int CycleWords::FindLetter(int relation, const std::vector<int>& labels) const {
  std::vector<int> c = CanonicalLabels(vocab_->relation(relation), labels);
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].relation == relation && letters_[i].labels == c) return static_cast<int>(i);
  }
  return -1;
}

// Least (letter, extra colors) over relabelings of the private vertices;
// the count of relabelings reaching it goes to *stabilizer.
std::vector<int> CycleWords::EncodeStep(const CycleStep& s, int* stabilizer) const {
  const CycleLetter& letter = letters_[s.letter];
  int extras = static_cast<int>(s.extra_colors.size());
  std::vector<int> sigma(extras);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> best;
  int count = 0;
  std::vector<int> labels(letter.labels.size());
  std::vector<int> colors(extras);
  do {
    for (std::size_t p = 0; p < labels.size(); ++p) {
      int l = letter.labels[p];
      labels[p] = l < 2 ? l : 2 + sigma[l - 2];
    }
    for (int j = 0; j < extras; ++j) colors[sigma[j]] = s.extra_colors[j];
    std::vector<int> enc{s.color, FindLetter(letter.relation, labels)};
    enc.insert(enc.end(), colors.begin(), colors.end());
    if (best.empty() || enc < best) {
      best = std::move(enc);
      count = 1;
    } else if (enc == best) {
      ++count;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  if (stabilizer) *stabilizer = count;
  return best;
}

ColoredCycle CycleWords::Build(const CycleWord& word) const {
  int len = static_cast<int>(word.size());
  Hypergraph::Builder b(vocab_);
  std::vector<int> colors(len);
  Vertex next = len + 1;
  for (int i = 0; i < len; ++i) colors[i] = word[i].color;
  for (int i = 0; i < len; ++i) {
    const CycleLetter& letter = letters_[word[i].letter];
    std::vector<Vertex> extra(word[i].extra_colors.size());
    for (std::size_t j = 0; j < extra.size(); ++j) {
      extra[j] = next++;
      colors.push_back(word[i].extra_colors[j]);
    }
    std::vector<Vertex> tuple(letter.labels.size());
    for (std::size_t p = 0; p < tuple.size(); ++p) {
      int l = letter.labels[p];
      tuple[p] = l == 0 ? i + 1 : l == 1 ? (i + 1) % len + 1 : extra[l - 2];
    }
    b.AddEdge(letter.relation, tuple);
  }
  b.AddVertexRange(1, next);
  return {b.Build(), std::move(colors)};
}

std::vector<int> CycleWords::CanonicalKey(const CycleWord& word, std::int64_t* aut) const {
  int len = static_cast<int>(word.size());
  if (len < 2) throw Error(ErrorKind::kInvalidArgument, "cycle words need at least two steps");
  // Encodings of each step read forwards and backwards (IN and OUT swapped).
  std::vector<std::vector<int>> fwd(len), bwd(len);
  std::int64_t stab = 1;
  for (int i = 0; i < len; ++i) {
    int s = 1;
    fwd[i] = EncodeStep(word[i], &s);
    stab *= s;
    const CycleLetter& letter = letters_[word[i].letter];
    std::vector<int> swapped = letter.labels;
    for (int& l : swapped) l = l == 0 ? 1 : l == 1 ? 0 : l;
    CycleStep rev{0, FindLetter(letter.relation, swapped), word[i].extra_colors};
    // The reversed step starts at w_{i+1}; its color is filled in below.
    bwd[i] = EncodeStep(rev, nullptr);
  }
  std::vector<int> best;
  std::int64_t hits = 0;
  std::vector<int> cur;
  for (int dir = 0; dir < 2; ++dir) {
    for (int start = 0; start < len; ++start) {
      cur.assign({0, len});
      for (int j = 0; j < len; ++j) {
        if (dir == 0) {
          cur.insert(cur.end(), fwd[(start + j) % len].begin(), fwd[(start + j) % len].end());
        } else {
          // w'_j = w_{start-j}, edge e_{start-j-1} reversed.
          int w = ((start - j) % len + len) % len;
          int e = (w - 1 + len) % len;
          std::vector<int> enc = bwd[e];
          enc[0] = word[w].color;
          cur.insert(cur.end(), enc.begin(), enc.end());
        }
      }
      if (best.empty() || cur < best) {
        best = cur;
        hits = 1;
      } else if (cur == best) {
        ++hits;
      }
    }
  }
  if (aut) *aut = hits * stab;
  return best;
}

std::vector<int> CycleWords::LoopKey(int relation, const std::vector<Vertex>& tuple,
                                     const std::vector<int>& colors, std::int64_t* aut) const {
  const Relation& rel = vocab_->relation(relation);
  std::vector<Vertex> order;
  std::vector<int> lab(tuple.size());
  for (std::size_t p = 0; p < tuple.size(); ++p) {
    auto it = std::find(order.begin(), order.end(), tuple[p]);
    lab[p] = static_cast<int>(it - order.begin());
    if (it == order.end()) order.push_back(tuple[p]);
  }
  int d = static_cast<int>(order.size());
  if (d != rel.arity - 1 || static_cast<int>(colors.size()) != d) {
    throw Error(ErrorKind::kInvalidArgument, "loop cycles have exactly one repeated vertex");
  }
  std::vector<int> sigma(d);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> best;
  std::int64_t hits = 0;
  std::vector<Vertex> t(tuple.size());
  std::vector<int> c(d);
  do {
    for (std::size_t p = 0; p < t.size(); ++p) t[p] = sigma[lab[p]];
    CanonicalizeInPlace(rel, t);
    for (int j = 0; j < d; ++j) c[sigma[j]] = colors[j];
    std::vector<int> enc{1, relation};
    enc.insert(enc.end(), t.begin(), t.end());
    enc.insert(enc.end(), c.begin(), c.end());
    if (best.empty() || enc < best) {
      best = std::move(enc);
      hits = 1;
    } else if (enc == best) {
      ++hits;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  if (aut) *aut = hits;
  return best;
}

std::vector<int> CycleWords::KeyOf(const Hypergraph& cycle, const std::vector<int>& colors,
                                   std::int64_t* aut) const {
  int m = cycle.num_edges();
  if (m == 1 && cycle.HasLoop(0)) {
    std::vector<Vertex> tuple(cycle.EdgeTuple(0).begin(), cycle.EdgeTuple(0).end());
    std::vector<Vertex> order;
    for (Vertex v : tuple) {
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    }
    std::vector<int> c;
    for (Vertex v : order) c.push_back(colors.at(cycle.IndexOrThrow(v)));
    return LoopKey(cycle.EdgeRelation(0), tuple, c, aut);
  }
  if (m < 2) throw Error(ErrorKind::kInvalidArgument, "not a cycle");
  int start = -1;
  for (int i = 0; i < cycle.num_vertices(); ++i) {
    if (cycle.Degree(i) == 2) {
      start = i;
      break;
    }
    if (cycle.Degree(i) != 1) throw Error(ErrorKind::kInvalidArgument, "not a cycle");
  }
  if (start < 0) throw Error(ErrorKind::kInvalidArgument, "not a cycle");
  CycleWord word;
  int w = start;
  EdgeId prev = -1;
  for (int step = 0; step < m; ++step) {
    auto inc = cycle.Incident(w);
    if (inc.size() != 2) throw Error(ErrorKind::kInvalidArgument, "not a cycle");
    EdgeId e = inc[0] == prev ? inc[1] : inc[0];
    if (cycle.HasLoop(e)) throw Error(ErrorKind::kInvalidArgument, "not a cycle");
    int nxt = -1;
    for (int u : cycle.EdgeVertices(e)) {
      if (u != w && cycle.Degree(u) == 2) {
        if (nxt >= 0) throw Error(ErrorKind::kInvalidArgument, "not a cycle");
        nxt = u;
      }
    }
    if (nxt < 0) throw Error(ErrorKind::kInvalidArgument, "not a cycle");
    CycleStep s;
    s.color = colors.at(w);
    auto tuple = cycle.EdgeTuple(e);
    std::vector<int> labels(tuple.size());
    for (std::size_t p = 0; p < tuple.size(); ++p) {
      int u = cycle.IndexOrThrow(tuple[p]);
      if (u == w) {
        labels[p] = 0;
      } else if (u == nxt) {
        labels[p] = 1;
      } else {
        labels[p] = 2 + static_cast<int>(s.extra_colors.size());
        s.extra_colors.push_back(colors.at(u));
      }
    }
    s.letter = FindLetter(cycle.EdgeRelation(e), labels);
    word.push_back(std::move(s));
    prev = e;
    w = nxt;
  }
  if (w != start) throw Error(ErrorKind::kInvalidArgument, "not a cycle");
  return CanonicalKey(word, aut);
}

}  // namespace sparselimit
