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


#include "sparselimit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace sparselimit {
namespace {

enum class Tok { kIdent, kLParen, kRParen, kComma, kDot, kEq, kArrow, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> Lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              s[j] == '\'')) {
        ++j;
      }
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({Tok::kLParen, "(", i});
        break;
      case ')':
        out.push_back({Tok::kRParen, ")", i});
        break;
      case ',':
        out.push_back({Tok::kComma, ",", i});
        break;
      case '.':
        out.push_back({Tok::kDot, ".", i});
        break;
      case '=':
        out.push_back({Tok::kEq, "=", i});
        break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::kArrow, "->", i});
          ++i;
          break;
        }
        [[fallthrough]];
      default:
        throw SyntaxError(i, std::string("unexpected character '") + c + "'");
    }
    ++i;
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

bool IsKeyword(const std::string& s) {
  static const std::set<std::string> kw{"exists", "forall", "not", "and", "or",
                                        "true",   "false",  "implies"};
  return kw.count(s) > 0;
}

class Parser {
 public:
  Parser(std::string_view text, const VocabularyPtr& vocab) : toks_(Lex(text)), vocab_(vocab) {}

  FormulaNodePtr ParseAll() {
    auto f = ParseFormula();
    if (Peek().kind != Tok::kEnd) Fail("unexpected '" + Peek().text + "'");
    return f;
  }

  std::vector<std::string> names;

 private:
  const Token& Peek(int ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  [[noreturn]] void Fail(const std::string& msg) const { throw SyntaxError(Peek().pos, msg); }
  bool PeekWord(const char* w) const { return Peek().kind == Tok::kIdent && Peek().text == w; }
  void Expect(Tok kind, const char* what) {
    if (Peek().kind != kind) Fail(std::string("expected ") + what);
    ++pos_;
  }

  int Variable() {
    if (Peek().kind != Tok::kIdent || IsKeyword(Peek().text)) Fail("expected a variable");
    std::string name = Peek().text;
    ++pos_;
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<int>(it - names.begin());
    names.push_back(name);
    return static_cast<int>(names.size()) - 1;
  }

  static FormulaNodePtr Make(FormulaKind kind, std::vector<FormulaNodePtr> children = {}) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    n->children = std::move(children);
    return n;
  }

  FormulaNodePtr ParseFormula() {
    if (PeekWord("exists") || PeekWord("forall")) {
      FormulaKind kind = PeekWord("exists") ? FormulaKind::kExists : FormulaKind::kForall;
      ++pos_;
      int var = Variable();
      Expect(Tok::kDot, "'.' after quantified variable");
      auto body = ParseFormula();
      auto n = std::make_shared<FormulaNode>();
      n->kind = kind;
      n->variable = var;
      n->children = {body};
      return n;
    }
    return ParseImplication();
  }

  FormulaNodePtr ParseImplication() {
    auto lhs = ParseDisjunction();
    if (Peek().kind == Tok::kArrow || PeekWord("implies")) {
      ++pos_;
      auto rhs = ParseQuantifiedOr(&Parser::ParseImplication);
      return Make(FormulaKind::kImplies, {lhs, rhs});
    }
    return lhs;
  }

  // A quantifier may open the right operand of a connective and then
  // extends as far as possible.
  FormulaNodePtr ParseQuantifiedOr(FormulaNodePtr (Parser::*next)()) {
    if (PeekWord("exists") || PeekWord("forall")) return ParseFormula();
    return (this->*next)();
  }

  FormulaNodePtr ParseDisjunction() {
    std::vector<FormulaNodePtr> parts{ParseConjunction()};
    while (PeekWord("or")) {
      ++pos_;
      if (PeekWord("exists") || PeekWord("forall")) {
        parts.push_back(ParseFormula());
        break;
      }
      parts.push_back(ParseConjunction());
    }
    return parts.size() == 1 ? parts[0] : Make(FormulaKind::kOr, std::move(parts));
  }

  FormulaNodePtr ParseConjunction() {
    std::vector<FormulaNodePtr> parts{ParseLiteral()};
    while (PeekWord("and")) {
      ++pos_;
      if (PeekWord("exists") || PeekWord("forall")) {
        parts.push_back(ParseFormula());
        break;
      }
      parts.push_back(ParseLiteral());
    }
    return parts.size() == 1 ? parts[0] : Make(FormulaKind::kAnd, std::move(parts));
  }

  FormulaNodePtr ParseLiteral() {
    if (PeekWord("not")) {
      ++pos_;
      if (PeekWord("exists") || PeekWord("forall")) return Make(FormulaKind::kNot, {ParseFormula()});
      return Make(FormulaKind::kNot, {ParseLiteral()});
    }
    if (Peek().kind == Tok::kLParen) {
      ++pos_;
      auto f = ParseFormula();
      Expect(Tok::kRParen, "')'");
      return f;
    }
    if (PeekWord("true")) {
      ++pos_;
      return Make(FormulaKind::kTrue);
    }
    if (PeekWord("false")) {
      ++pos_;
      return Make(FormulaKind::kFalse);
    }
    if (Peek().kind != Tok::kIdent || IsKeyword(Peek().text)) Fail("expected an atom");
    if (Peek(1).kind == Tok::kLParen) {
      std::size_t at = Peek().pos;
      std::string rel = Peek().text;
      pos_ += 2;
      auto r = vocab_->Find(rel);
      if (!r) throw Error(ErrorKind::kUnknownRelation, "unknown relation '" + rel + "' at offset " +
                                                           std::to_string(at));
      auto n = std::make_shared<FormulaNode>();
      n->kind = FormulaKind::kAtom;
      n->relation = *r;
      n->args.push_back(Variable());
      while (Peek().kind == Tok::kComma) {
        ++pos_;
        n->args.push_back(Variable());
      }
      Expect(Tok::kRParen, "')' after atom arguments");
      if (static_cast<int>(n->args.size()) != vocab_->relation(*r).arity) {
        throw Error(ErrorKind::kArity, "relation '" + rel + "' has arity " +
                                           std::to_string(vocab_->relation(*r).arity) + " but got " +
                                           std::to_string(n->args.size()) + " arguments");
      }
      return n;
    }
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::kEquals;
    n->args.push_back(Variable());
    Expect(Tok::kEq, "'=' or '('");
    n->args.push_back(Variable());
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const VocabularyPtr& vocab_;
};

void CollectFree(const FormulaNode& n, std::multiset<int>& bound, std::set<int>& free) {
  switch (n.kind) {
    case FormulaKind::kAtom:
    case FormulaKind::kEquals:
      for (int v : n.args) {
        if (!bound.count(v)) free.insert(v);
      }
      return;
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      auto it = bound.insert(n.variable);
      CollectFree(*n.children[0], bound, free);
      bound.erase(it);
      return;
    }
    default:
      for (const auto& c : n.children) CollectFree(*c, bound, free);
  }
}

}  // namespace

Formula::Formula(VocabularyPtr vocab, FormulaNodePtr root, std::vector<std::string> variable_names)
    : vocab_(std::move(vocab)), root_(std::move(root)), names_(std::move(variable_names)) {}

Formula Formula::Parse(std::string_view text, VocabularyPtr vocab) {
  Parser p(text, vocab);
  auto root = p.ParseAll();
  return Formula(std::move(vocab), std::move(root), std::move(p.names));
}

int Formula::VariableId(std::string_view name) const {
  for (int i = 0; i < num_variables(); ++i) {
    if (names_[i] == name) return i;
  }
  return -1;
}

std::vector<int> Formula::FreeVariables() const {
  std::multiset<int> bound;
  std::set<int> free;
  CollectFree(*root_, bound, free);
  return {free.begin(), free.end()};
}

int QuantifierRank(const FormulaNode& node) {
  int best = 0;
  for (const auto& c : node.children) best = std::max(best, QuantifierRank(*c));
  if (node.kind == FormulaKind::kExists || node.kind == FormulaKind::kForall) ++best;
  return best;
}

int Formula::QuantifierRank() const { return sparselimit::QuantifierRank(*root_); }

bool Formula::IsEdgeFormula() const {
  std::function<bool(const FormulaNode&)> walk = [&](const FormulaNode& n) {
    if (n.kind == FormulaKind::kEquals) return false;
    return std::all_of(n.children.begin(), n.children.end(),
                       [&](const FormulaNodePtr& c) { return walk(*c); });
  };
  return walk(*root_);
}

std::string Formula::ToString() const {
  std::function<std::string(const FormulaNode&, bool)> print = [&](const FormulaNode& n,
                                                                   bool nested) -> std::string {
    auto wrap = [&](std::string s) { return nested ? "(" + s + ")" : s; };
    switch (n.kind) {
      case FormulaKind::kTrue:
        return "true";
      case FormulaKind::kFalse:
        return "false";
      case FormulaKind::kAtom: {
        std::string s = vocab_->relation(n.relation).name + "(";
        for (std::size_t i = 0; i < n.args.size(); ++i) {
          if (i) s += ", ";
          s += names_[n.args[i]];
        }
        return s + ")";
      }
      case FormulaKind::kEquals:
        return names_[n.args[0]] + " = " + names_[n.args[1]];
      case FormulaKind::kNot:
        return "not " + print(*n.children[0], true);
      case FormulaKind::kAnd:
      case FormulaKind::kOr: {
        std::string op = n.kind == FormulaKind::kAnd ? " and " : " or ";
        std::string s;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          if (i) s += op;
          s += print(*n.children[i], true);
        }
        return wrap(s);
      }
      case FormulaKind::kImplies:
        return wrap(print(*n.children[0], true) + " -> " + print(*n.children[1], true));
      case FormulaKind::kExists:
      case FormulaKind::kForall:
        return wrap(std::string(n.kind == FormulaKind::kExists ? "exists " : "forall ") +
                    names_[n.variable] + ". " + print(*n.children[0], false));
    }
    return "";
  };
  return print(*root_, false);
}

}  // namespace sparselimit
