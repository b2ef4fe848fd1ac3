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


#include "sparselimit/evaluate.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace sparselimit {
namespace {

constexpr Vertex kUnset = std::numeric_limits<Vertex>::min();

// Atoms that must hold whenever `n` evaluates to `polarity`. Only the
// top-level propositional structure is inspected.
void Guards(const FormulaNode& n, bool polarity, std::vector<const FormulaNode*>& out) {
  switch (n.kind) {
    case FormulaKind::kAtom:
    case FormulaKind::kEquals:
      if (polarity) out.push_back(&n);
      return;
    case FormulaKind::kNot:
      Guards(*n.children[0], !polarity, out);
      return;
    case FormulaKind::kAnd:
      if (polarity) {
        for (const auto& c : n.children) Guards(*c, true, out);
      }
      return;
    case FormulaKind::kOr:
      if (!polarity) {
        for (const auto& c : n.children) Guards(*c, false, out);
      }
      return;
    case FormulaKind::kImplies:
      if (!polarity) {
        Guards(*n.children[0], true, out);
        Guards(*n.children[1], false, out);
      }
      return;
    default:
      return;
  }
}

class Evaluator {
 public:
  Evaluator(const Hypergraph& h, const Formula& phi, std::int64_t budget)
      : h_(h), phi_(phi), budget_(budget), env_(phi.num_variables(), kUnset) {}

  std::vector<Vertex>& env() { return env_; }

  bool Eval(const FormulaNode& n) {
    switch (n.kind) {
      case FormulaKind::kTrue:
        return true;
      case FormulaKind::kFalse:
        return false;
      case FormulaKind::kAtom: {
        std::array<Vertex, kMaxArity> t;
        for (std::size_t i = 0; i < n.args.size(); ++i) t[i] = Value(n.args[i]);
        return h_.Holds(n.relation, std::span<const Vertex>(t.data(), n.args.size()));
      }
      case FormulaKind::kEquals:
        return Value(n.args[0]) == Value(n.args[1]);
      case FormulaKind::kNot:
        return !Eval(*n.children[0]);
      case FormulaKind::kAnd:
        for (const auto& c : n.children) {
          if (!Eval(*c)) return false;
        }
        return true;
      case FormulaKind::kOr:
        for (const auto& c : n.children) {
          if (Eval(*c)) return true;
        }
        return false;
      case FormulaKind::kImplies:
        return !Eval(*n.children[0]) || Eval(*n.children[1]);
      case FormulaKind::kExists:
        return Search(n, true);
      case FormulaKind::kForall:
        return !Search(n, false);
    }
    return false;
  }

 private:
  Vertex Value(int var) const {
    Vertex v = env_[var];
    if (v == kUnset) {
      throw Error(ErrorKind::kUnboundVariable,
                  "variable '" + phi_.variable_name(var) + "' has no value");
    }
    return v;
  }

  // Looks for x making the body evaluate to `target`.
  bool Search(const FormulaNode& n, bool target) {
    const int x = n.variable;
    const FormulaNode& body = *n.children[0];
    const Vertex saved = env_[x];
    env_[x] = kUnset;
    std::vector<const FormulaNode*> guards;
    Guards(body, target, guards);

    // Candidate set from the most selective guard mentioning x next to a
    // bound variable.
    std::vector<Vertex> candidates;
    bool restricted = false;
    for (const FormulaNode* g : guards) {
      bool has_x = false;
      int anchor = -1;
      for (int a : g->args) {
        if (a == x) {
          has_x = true;
        } else if (env_[a] != kUnset) {
          anchor = a;
        }
      }
      if (!has_x || anchor < 0) continue;
      std::vector<Vertex> cand;
      if (g->kind == FormulaKind::kEquals) {
        cand.push_back(env_[anchor]);
      } else {
        auto idx = h_.IndexOf(env_[anchor]);
        if (idx) {
          for (EdgeId e : h_.Incident(*idx)) {
            if (h_.EdgeRelation(e) != g->relation) continue;
            for (int v : h_.EdgeVertices(e)) cand.push_back(h_.VertexAt(v));
          }
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      }
      if (!restricted || cand.size() < candidates.size()) {
        candidates = std::move(cand);
        restricted = true;
      }
      if (candidates.size() <= 1) break;
    }

    bool found = false;
    auto try_vertex = [&](Vertex v) {
      if (budget_ > 0 && ++spent_ > budget_) {
        throw Error(ErrorKind::kBudgetExceeded, "evaluation budget exhausted");
      }
      env_[x] = v;
      return Eval(body) == target;
    };
    if (restricted) {
      for (Vertex v : candidates) {
        if (try_vertex(v)) {
          found = true;
          break;
        }
      }
    } else {
      for (Vertex v : h_.vertices()) {
        if (try_vertex(v)) {
          found = true;
          break;
        }
      }
    }
    env_[x] = saved;
    return found;
  }

  const Hypergraph& h_;
  const Formula& phi_;
  std::int64_t budget_;
  std::int64_t spent_ = 0;
  std::vector<Vertex> env_;
};

}  // namespace

bool Evaluate(const Hypergraph& h, const Formula& phi, const std::map<std::string, Vertex>& assignment,
              const EvaluateOptions& options) {
  Evaluator ev(h, phi, options.budget);
  for (const auto& [name, v] : assignment) {
    int id = phi.VariableId(name);
    if (id >= 0) {
      if (!h.Contains(v)) {
        throw Error(ErrorKind::kUnknownVertex, "vertex " + std::to_string(v) + " not present");
      }
      ev.env()[id] = v;
    }
  }
  return ev.Eval(phi.root());
}

}  // namespace sparselimit
