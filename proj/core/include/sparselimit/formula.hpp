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


#ifndef SPARSELIMIT_FORMULA_HPP_
#define SPARSELIMIT_FORMULA_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sparselimit/vocabulary.hpp"

namespace sparselimit {

enum class FormulaKind {
  kTrue,
  kFalse,
  kAtom,
  kEquals,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kExists,
  kForall,
};

struct FormulaNode {
  FormulaKind kind = FormulaKind::kTrue;
  // Atom: relation index; args are variable ids. Equality: two args.
  int relation = -1;
  std::vector<int> args;
  // Quantifiers: the bound variable id.
  int variable = -1;
  std::vector<std::shared_ptr<const FormulaNode>> children;
};

using FormulaNodePtr = std::shared_ptr<const FormulaNode>;

// A first-order formula over a vocabulary. Variables are identified by
// name; every distinct name gets one id, and quantifiers shadow.
//
// Grammar:
//   formula := ("exists" | "forall") var "." formula | impl
//   impl    := disj (("->" | "implies") impl)?
//   disj    := conj ("or" conj)*
//   conj    := lit ("and" lit)*
//   lit     := "not" lit | "(" formula ")" | "true" | "false" | atom
//   atom    := REL "(" var ("," var)* ")" | var "=" var
class Formula {
 public:
  Formula() = default;
  Formula(VocabularyPtr vocab, FormulaNodePtr root, std::vector<std::string> variable_names);

  // Throws SyntaxError (with offset), UnknownRelation or ArityError.
  static Formula Parse(std::string_view text, VocabularyPtr vocab);

  const FormulaNode& root() const { return *root_; }
  const FormulaNodePtr& root_ptr() const { return root_; }
  const Vocabulary& vocabulary() const { return *vocab_; }
  const VocabularyPtr& vocabulary_ptr() const { return vocab_; }
  int num_variables() const { return static_cast<int>(names_.size()); }
  const std::string& variable_name(int id) const { return names_.at(id); }
  // Id of a variable name, or -1.
  int VariableId(std::string_view name) const;

  // Sorted ids of variables occurring free.
  std::vector<int> FreeVariables() const;
  bool IsSentence() const { return FreeVariables().empty(); }
  int QuantifierRank() const;
  // True when no equality symbol occurs.
  bool IsEdgeFormula() const;

  // Fully parenthesized binary connectives; parses back to the same tree.
  std::string ToString() const;

 private:
  VocabularyPtr vocab_;
  FormulaNodePtr root_;
  std::vector<std::string> names_;
};

int QuantifierRank(const FormulaNode& node);

}  // namespace sparselimit

#endif  // SPARSELIMIT_FORMULA_HPP_
