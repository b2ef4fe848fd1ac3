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


#include "support/logic.hpp"

#include <algorithm>

#include "support/oracles.hpp"

namespace sparselimit::oracle {
namespace {

bool Rec(const Hypergraph& h, const FormulaNode& node, std::vector<Vertex>& env,
         std::vector<bool>& bound) {
  switch (node.kind) {
    case FormulaKind::kTrue:
      return true;
    case FormulaKind::kFalse:
      return false;
    case FormulaKind::kAtom: {
      std::vector<Vertex> t;
      for (int v : node.args) {
        if (!bound[v]) throw Error(ErrorKind::kUnboundVariable, "unbound");
        t.push_back(env[v]);
      }
      return h.Holds(node.relation, t);
    }
    case FormulaKind::kEquals:
      if (!bound[node.args[0]] || !bound[node.args[1]]) {
        throw Error(ErrorKind::kUnboundVariable, "unbound");
      }
      return env[node.args[0]] == env[node.args[1]];
    case FormulaKind::kNot:
      return !Rec(h, *node.children[0], env, bound);
    case FormulaKind::kAnd: {
      bool r = true;
      for (const auto& c : node.children) r = Rec(h, *c, env, bound) && r;
      return r;
    }
    case FormulaKind::kOr: {
      bool r = false;
      for (const auto& c : node.children) r = Rec(h, *c, env, bound) || r;
      return r;
    }
    case FormulaKind::kImplies: {
      bool a = Rec(h, *node.children[0], env, bound);
      bool b = Rec(h, *node.children[1], env, bound);
      return !a || b;
    }
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      const bool exists = node.kind == FormulaKind::kExists;
      Vertex saved_v = env[node.variable];
      bool saved_b = bound[node.variable];
      bound[node.variable] = true;
      bool any = false, all = true;
      for (Vertex v : h.vertices()) {
        env[node.variable] = v;
        bool r = Rec(h, *node.children[0], env, bound);
        any = any || r;
        all = all && r;
      }
      env[node.variable] = saved_v;
      bound[node.variable] = saved_b;
      return exists ? any : all;
    }
  }
  return false;
}

std::vector<std::string> AtomTemplates(const Vocabulary& vocab, const std::vector<std::string>& vars) {
  std::vector<std::string> atoms;
  for (int r = 0; r < vocab.size(); ++r) {
    const Relation& rel = vocab.relation(r);
    std::vector<int> idx(rel.arity, 0);
    const int m = static_cast<int>(vars.size());
    while (true) {
      std::string a = rel.name + "(";
      for (int i = 0; i < rel.arity; ++i) a += (i ? "," : "") + vars[idx[i]];
      atoms.push_back(a + ")");
      int i = rel.arity - 1;
      while (i >= 0 && ++idx[i] == m) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) atoms.push_back(vars[i] + " = " + vars[j]);
  }
  return atoms;
}

}  // namespace

bool NaiveEvaluate(const Hypergraph& h, const Formula& phi,
                   const std::map<std::string, Vertex>& assignment) {
  std::vector<Vertex> env(phi.num_variables(), 0);
  std::vector<bool> bound(phi.num_variables(), false);
  for (const auto& [name, v] : assignment) {
    int id = phi.VariableId(name);
    if (id >= 0) {
      env[id] = v;
      bound[id] = true;
    }
  }
  return Rec(h, phi.root(), env, bound);
}

Hypergraph RandomStructure(const VocabularyPtr& vocab, int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Hypergraph::Builder b(vocab);
  b.AddVertexRange(1, n + 1);
  for (int r = 0; r < vocab->size(); ++r) {
    for (const auto& t : AllOrbits(vocab->relation(r), n)) {
      if (coin(rng)) b.AddEdge(r, t);
    }
  }
  return b.Build();
}

std::string RandomFormula(const Vocabulary& vocab, int max_rank,
                          const std::vector<std::string>& free_vars, std::mt19937_64& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  std::vector<std::string> vars = free_vars;
  auto rec = [&](auto&& self, int rank, int depth) -> std::string {
    int choice = pick(depth > 3 ? 2 : 6);
    if (vars.empty() && choice < 2) choice = rank > 0 ? 5 : pick(2) + 6;
    switch (choice) {
      case 0:
      case 1: {
        std::vector<std::string> atoms = AtomTemplates(vocab, vars);
        return atoms[pick(static_cast<int>(atoms.size()))];
      }
      case 2:
        return "not (" + self(self, rank, depth + 1) + ")";
      case 3:
        return "(" + self(self, rank, depth + 1) + ") and (" + self(self, rank, depth + 1) + ")";
      case 4:
        return "(" + self(self, rank, depth + 1) + ") or (" + self(self, rank, depth + 1) + ")";
      case 5: {
        if (rank == 0) return self(self, rank, depth + 1);
        std::string v = "x" + std::to_string(pick(3));
        vars.push_back(v);
        std::string body = self(self, rank - 1, depth + 1);
        vars.pop_back();
        return std::string(pick(2) ? "exists " : "forall ") + v + ". (" + body + ")";
      }
      case 6:
        return "true";
      default:
        return "false";
    }
  };
  return rec(rec, max_rank, 0);
}

std::vector<std::string> SentenceBattery(const Vocabulary& vocab, int k,
                                         const std::vector<std::string>& free_vars,
                                         int max_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (int j = 0; j <= k; ++j) {
    std::vector<std::string> vars = free_vars;
    for (int i = 1; i <= j; ++i) vars.push_back("x" + std::to_string(i));
    if (vars.empty()) continue;
    std::vector<std::string> lits;
    for (const auto& a : AtomTemplates(vocab, vars)) {
      lits.push_back(a);
      lits.push_back("not " + a);
    }
    std::vector<std::string> matrices = lits;
    std::vector<std::string> pairs;
    for (std::size_t a = 0; a < lits.size(); ++a) {
      for (std::size_t b = a + 1; b < lits.size(); ++b) {
        pairs.push_back("(" + lits[a] + " and " + lits[b] + ")");
        pairs.push_back("(" + lits[a] + " or " + lits[b] + ")");
      }
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (const auto& p : pairs) {
      if (static_cast<int>(matrices.size()) >= max_size) break;
      matrices.push_back(p);
    }
    if (static_cast<int>(matrices.size()) > max_size) {
      std::shuffle(matrices.begin(), matrices.end(), rng);
      matrices.resize(max_size);
    }
    for (int mask = 0; mask < (1 << j); ++mask) {
      std::string prefix;
      for (int i = 1; i <= j; ++i) {
        prefix += (mask >> (i - 1) & 1 ? "forall x" : "exists x") + std::to_string(i) + ". ";
      }
      for (const auto& m : matrices) out.push_back(prefix + m);
    }
  }
  return out;
}

}  // namespace sparselimit::oracle
