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

#include "sparselimit/vocabulary.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace sparselimit {
namespace {

Permutation Compose(const Permutation& a, const Permutation& b) {
  // (a*b) acts as "apply b, then a": t -> (t[b[a[i]]])_i.
  Permutation c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

Permutation Identity(int arity) {
  Permutation p(arity);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool IsPermutation(const Permutation& p, int arity) {
  if (static_cast<int>(p.size()) != arity) return false;
  std::vector<bool> seen(arity, false);
  for (int x : p) {
    if (x < 0 || x >= arity || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

std::int64_t Factorial(int d) {
  std::int64_t f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

std::vector<int> RestrictedGrowth(std::span<const int> t) {
  std::vector<int> label(t.size() + 1, -1);
  std::vector<int> out(t.size());
  int next = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (label[t[i]] < 0) label[t[i]] = next++;
    out[i] = label[t[i]];
  }
  return out;
}

template <typename T>
std::vector<T> Act(const Permutation& g, std::span<const T> t) {
  std::vector<T> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[g[i]];
  return out;
}

}  // namespace

SymmetryGroup SymmetryGroup::Generated(int arity,
                                       const std::vector<Permutation>& generators) {
  for (const auto& g : generators) {
    if (!IsPermutation(g, arity)) {
      throw Error(ErrorKind::kNonGroup, "generator is not a permutation of the positions");
    }
  }
  std::set<Permutation> seen{Identity(arity)};
  std::vector<Permutation> frontier{Identity(arity)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier) {
      for (const auto& g : generators) {
        Permutation q = Compose(p, g);
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  SymmetryGroup s;
  s.arity_ = arity;
  s.elements_.assign(seen.begin(), seen.end());
  return s;
}

SymmetryGroup SymmetryGroup::FromElements(int arity, std::vector<Permutation> elements) {
  SymmetryGroup s;
  s.arity_ = arity;
  s.elements_ = std::move(elements);
  return s;
}

SymmetryGroup SymmetryGroup::Trivial(int arity) { return FromElements(arity, {Identity(arity)}); }

SymmetryGroup SymmetryGroup::Symmetric(int arity) { return BlockSymmetric(arity, arity); }

SymmetryGroup SymmetryGroup::BlockSymmetric(int arity, int split) {
  std::vector<Permutation> elems;
  Permutation p = Identity(arity);
  do {
    bool ok = true;
    for (int i = 0; i < arity; ++i) {
      if ((i < split) != (p[i] < split)) ok = false;
    }
    if (ok) elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return FromElements(arity, std::move(elems));
}

bool SymmetryGroup::IsValidPermutationSet() const {
  for (const auto& p : elements_) {
    if (!IsPermutation(p, arity_)) return false;
  }
  return true;
}

bool SymmetryGroup::IsGroup() const {
  if (!IsValidPermutationSet()) return false;
  std::set<Permutation> s(elements_.begin(), elements_.end());
  if (!s.count(Identity(arity_))) return false;
  for (const auto& a : s) {
    for (const auto& b : s) {
      if (!s.count(Compose(a, b))) return false;
    }
  }
  // Finite and closed under composition implies closed under inverse.
  return true;
}

Vocabulary::Vocabulary(std::string name, std::vector<Relation> relations)
    : name_(std::move(name)), relations_(std::move(relations)) {
  for (const auto& r : relations_) {
    bool computable = r.arity >= 1 && r.arity <= kMaxArity && r.group.arity() == r.arity &&
                      r.group.IsValidPermutationSet();
    for (const auto& p : r.antireflexive) {
      if (p.first < 0 || p.second < 0 || p.first >= r.arity || p.second >= r.arity) {
        computable = false;
      }
    }
    patterns_.push_back(computable ? ComputeOrbitPatterns(r) : std::vector<OrbitPattern>{});
  }
}

std::optional<int> Vocabulary::Find(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return std::nullopt;
}

int Vocabulary::MaxArity() const {
  int m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity);
  return m;
}

std::vector<ValidationIssue> Vocabulary::Validate(int arity_cap) const {
  std::vector<ValidationIssue> issues;
  std::set<std::string> names;
  if (relations_.empty()) {
    issues.push_back({ErrorKind::kInvalidArgument, "vocabulary has no relations"});
  }
  for (const auto& r : relations_) {
    const std::string where = "relation '" + r.name + "': ";
    if (r.name.empty()) issues.push_back({ErrorKind::kInvalidArgument, "empty relation name"});
    if (!names.insert(r.name).second) {
      issues.push_back({ErrorKind::kInvalidArgument, where + "duplicate name"});
    }
    if (r.arity < 2) {
      issues.push_back({ErrorKind::kInvalidArgument, where + "arity must be at least 2"});
    }
    if (r.arity > std::min(arity_cap, kMaxArity)) {
      issues.push_back({ErrorKind::kInvalidArgument,
                        where + "arity exceeds the cap of " + std::to_string(arity_cap)});
    }
    if (r.group.arity() != r.arity) {
      issues.push_back({ErrorKind::kArityMismatch, where + "group arity " +
                                                       std::to_string(r.group.arity()) +
                                                       " differs from relation arity"});
    } else if (!r.group.IsGroup()) {
      issues.push_back({ErrorKind::kNonGroup,
                        where + "permutations do not form a group (identity or closure fails)"});
    }
    for (const auto& p : r.antireflexive) {
      if (p.first < 0 || p.second < 0 || p.first >= r.arity || p.second >= r.arity) {
        issues.push_back({ErrorKind::kBadPair, where + "pair out of range"});
      } else if (p.first == p.second) {
        issues.push_back({ErrorKind::kBadPair, where + "pair {i,i} is not allowed"});
      }
    }
  }
  return issues;
}

void Vocabulary::ValidateOrThrow(int arity_cap) const {
  auto issues = Validate(arity_cap);
  if (!issues.empty()) throw Error(issues.front().kind, issues.front().message);
}

const std::vector<OrbitPattern>& Vocabulary::Patterns(int relation) const {
  return patterns_.at(relation);
}

bool ViolatesAntiReflexivity(const Relation& relation, std::span<const Vertex> tuple) {
  for (const auto& p : relation.antireflexive) {
    if (tuple[p.first] == tuple[p.second]) return true;
  }
  return false;
}

bool CanonicalizeInPlace(const Relation& relation, std::span<Vertex> tuple) {
  if (ViolatesAntiReflexivity(relation, tuple)) return false;
  const auto& elems = relation.group.elements();
  const std::size_t a = tuple.size();
  if (elems.size() <= 1) return true;
  if (static_cast<std::int64_t>(elems.size()) == Factorial(static_cast<int>(a))) {
    std::sort(tuple.begin(), tuple.end());
    return true;
  }
  std::array<Vertex, kMaxArity> best;
  std::array<Vertex, kMaxArity> cur;
  std::copy(tuple.begin(), tuple.end(), best.begin());
  for (const auto& g : elems) {
    for (std::size_t i = 0; i < a; ++i) cur[i] = tuple[g[i]];
    if (std::lexicographical_compare(cur.begin(), cur.begin() + a, best.begin(),
                                     best.begin() + a)) {
      best = cur;
    }
  }
  std::copy(best.begin(), best.begin() + a, tuple.begin());
  return true;
}

std::optional<std::vector<Vertex>> CanonicalEdge(const Relation& relation,
                                                 std::span<const Vertex> tuple) {
  if (static_cast<int>(tuple.size()) != relation.arity) {
    throw Error(ErrorKind::kLengthMismatch, "tuple of length " + std::to_string(tuple.size()) +
                                                " for relation '" + relation.name +
                                                "' of arity " + std::to_string(relation.arity));
  }
  std::vector<Vertex> t(tuple.begin(), tuple.end());
  if (!CanonicalizeInPlace(relation, t)) return std::nullopt;
  return t;
}

std::vector<OrbitPattern> ComputeOrbitPatterns(const Relation& relation) {
  const int a = relation.arity;
  std::vector<OrbitPattern> out;
  for (int d = 1; d <= a; ++d) {
    // Canonical tuples over labels 0..d-1 using every label.
    std::set<std::vector<int>> reps;
    std::vector<int> t(a, 0);
    while (true) {
      std::vector<bool> used(d, false);
      for (int x : t) used[x] = true;
      bool surjective = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
      bool excluded = false;
      for (const auto& p : relation.antireflexive) {
        if (t[p.first] == t[p.second]) excluded = true;
      }
      if (surjective && !excluded) {
        std::vector<int> best = t;
        for (const auto& g : relation.group.elements()) {
          best = std::min(best, Act<int>(g, t));
        }
        reps.insert(best);
      }
      int i = a - 1;
      while (i >= 0 && t[i] == d - 1) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
    std::map<std::vector<int>, std::vector<std::vector<int>>> classes;
    for (const auto& rep : reps) {
      std::vector<int> key = RestrictedGrowth(rep);
      for (const auto& g : relation.group.elements()) {
        key = std::min(key, RestrictedGrowth(Act<int>(g, rep)));
      }
      classes[key].push_back(rep);
    }
    for (auto& [key, members] : classes) {
      OrbitPattern p;
      p.blocks = key;
      p.distinct = d;
      p.constant = Rational(static_cast<std::int64_t>(members.size()), Factorial(d));
      p.orbit_reps = std::move(members);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::uint64_t EdgeSpaceSize(const std::vector<OrbitPattern>& patterns, std::int64_t n) {
  unsigned __int128 total = 0;
  constexpr unsigned __int128 kLimit = static_cast<unsigned __int128>(1) << 62;
  for (const auto& p : patterns) {
    // orbit_reps.size() * C(n, d) = c * (n)_d.
    unsigned __int128 binom = 1;
    for (int i = 0; i < p.distinct; ++i) {
      if (n - i <= 0) {
        binom = 0;
        break;
      }
      binom = binom * static_cast<unsigned __int128>(n - i) / (i + 1);
      if (binom > kLimit) throw Error(ErrorKind::kOverflow, "edge space too large");
    }
    total += binom * p.orbit_reps.size();
    if (total > kLimit) throw Error(ErrorKind::kOverflow, "edge space too large");
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

std::vector<PositionPair> AllPairs(int arity) {
  std::vector<PositionPair> pairs;
  for (int i = 0; i < arity; ++i) {
    for (int j = i + 1; j < arity; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

std::optional<int> ParseParam(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
  std::string_view rest = name.substr(prefix.size());
  if (!rest.empty() && rest.front() == '<' && rest.back() == '>') {
    rest = rest.substr(1, rest.size() - 2);
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty()) return std::nullopt;
  return value;
}

}  // namespace

VocabularyPtr PresetVocabulary(std::string_view name) {
  if (name == "graph") {
    return std::make_shared<Vocabulary>(
        "graph", std::vector<Relation>{{"E", 2, SymmetryGroup::Symmetric(2), {{0, 1}}}});
  }
  if (name == "digraph") {
    return std::make_shared<Vocabulary>(
        "digraph", std::vector<Relation>{{"E", 2, SymmetryGroup::Trivial(2), {{0, 1}}}});
  }
  if (name == "digraph-loops") {
    return std::make_shared<Vocabulary>(
        "digraph-loops", std::vector<Relation>{{"E", 2, SymmetryGroup::Trivial(2), {}}});
  }
  if (auto d = ParseParam(name, "hypergraph")) {
    if (*d < 2 || *d > kDefaultArityCap) {
      throw Error(ErrorKind::kInvalidArgument, "hypergraph arity must be in 2.." +
                                                   std::to_string(kDefaultArityCap));
    }
    return std::make_shared<Vocabulary>(
        "hypergraph" + std::to_string(*d),
        std::vector<Relation>{{"E", *d, SymmetryGroup::Symmetric(*d), AllPairs(*d)}});
  }
  if (auto l = ParseParam(name, "cnf")) {
    if (*l < 2 || *l > kDefaultArityCap) {
      throw Error(ErrorKind::kInvalidArgument,
                  "clause width must be in 2.." + std::to_string(kDefaultArityCap));
    }
    std::vector<Relation> rels;
    for (int j = 0; j <= *l; ++j) {
      rels.push_back({"R" + std::to_string(j), *l, SymmetryGroup::BlockSymmetric(*l, j),
                      AllPairs(*l)});
    }
    return std::make_shared<Vocabulary>("cnf" + std::to_string(*l), std::move(rels));
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown vocabulary preset '" + std::string(name) + "'");
}

std::vector<std::string> PresetNames() {
  return {"graph", "digraph", "digraph-loops", "hypergraph<d>", "cnf<l>"};
}

DensityMap::DensityMap(const Vocabulary& vocab, double uniform)
    : betas_(vocab.size(), uniform) {}

DensityMap DensityMap::Parse(const Vocabulary& vocab, std::string_view text) {
  auto parse_number = [&](std::string_view s) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != str.size() || str.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "bad density value '" + str + "'");
    }
    if (!(v >= 0)) throw Error(ErrorKind::kInvalidArgument, "density must be non-negative");
    return v;
  };
  if (text.find('=') == std::string_view::npos) {
    return DensityMap(vocab, parse_number(text));
  }
  std::vector<double> betas(vocab.size(), -1.0);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kInvalidArgument, "expected R=value in '" + std::string(item) + "'");
    }
    auto rel = vocab.Find(item.substr(0, eq));
    if (!rel) {
      throw Error(ErrorKind::kUnknownRelation,
                  "unknown relation '" + std::string(item.substr(0, eq)) + "'");
    }
    betas[*rel] = parse_number(item.substr(eq + 1));
    pos = comma + 1;
  }
  for (int i = 0; i < vocab.size(); ++i) {
    if (betas[i] < 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "no density given for relation '" + vocab.relation(i).name + "'");
    }
  }
  return DensityMap(std::move(betas));
}

std::string DensityMap::ToString(const Vocabulary& vocab) const {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < vocab.size(); ++i) {
    if (i) os << ',';
    os << vocab.relation(i).name << '=' << betas_.at(i);
  }
  return os.str();
}

}  // namespace sparselimit
