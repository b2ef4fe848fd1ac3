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


#include "sparselimit/symexpr.hpp"

#include <cmath>
#include <functional>
#include <unordered_set>

#include "sparselimit/errors.hpp"

namespace sparselimit {

std::string_view FamilyName(Family f) {
  switch (f) {
    case Family::kConstant:
      return "constant";
    case Family::kBeta:
      return "beta";
    case Family::kLambda:
      return "Lambda";
    case Family::kM:
      return "M";
    case Family::kGamma:
      return "Gamma";
    case Family::kGammaSum:
      return "GammaSum";
    case Family::kUpsilon:
      return "Upsilon";
    case Family::kUpsilonSum:
      return "UpsilonSum";
  }
  return "?";
}

namespace sym {
namespace {

Expr Make(ExprOp op, Family family, std::vector<Expr> args = {}, int index = 0,
          Rational value = 0) {
  auto node = std::make_shared<ExprNode>();
  node->op = op;
  node->family = family;
  node->index = index;
  node->value = value;
  node->args = std::move(args);
  return node;
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kFamily, what);
}

void RequireNonNull(const std::vector<Expr>& v) {
  for (const auto& e : v) Require(e != nullptr, "null expression");
}

bool IsOne(const Expr& e) { return e->op == ExprOp::kConstant && e->value == Rational(1); }
bool LambdaLike(const Expr& e) { return e->family == Family::kLambda || IsOne(e); }
bool GammaLike(const Expr& e) {
  return e->family == Family::kGamma || e->family == Family::kGammaSum;
}
bool UpsilonLike(const Expr& e) {
  return e->family == Family::kUpsilon || e->family == Family::kUpsilonSum || IsOne(e);
}

Expr Poisson(ExprOp op, Expr mean, int n) {
  Require(mean != nullptr, "null Poisson mean");
  Require(n >= 0, "Poisson count must be nonnegative");
  Family f;
  if (mean->family == Family::kM) {
    f = Family::kLambda;
  } else if (GammaLike(mean)) {
    f = Family::kUpsilon;
  } else {
    throw Error(ErrorKind::kFamily, "Poisson mean must lie in M, Gamma or GammaSum, not " +
                                        std::string(FamilyName(mean->family)));
  }
  return Make(op, f, {std::move(mean)}, n);
}

}  // namespace

Expr One() {
  static const Expr one = Make(ExprOp::kConstant, Family::kConstant, {}, 0, 1);
  return one;
}

Expr Constant(Rational c) {
  Require(c >= Rational(0), "negative constant");
  if (c == Rational(1)) return One();
  return Make(ExprOp::kConstant, Family::kConstant, {}, 0, c);
}

Expr Beta(int relation) {
  Require(relation >= 0, "bad relation index");
  return Make(ExprOp::kBeta, Family::kBeta, {}, relation);
}

Expr PoissonPmf(Expr mean, int n) { return Poisson(ExprOp::kPoissonPmf, std::move(mean), n); }

Expr PoissonTail(Expr mean, int n) { return Poisson(ExprOp::kPoissonTail, std::move(mean), n); }

Expr LambdaProduct(std::vector<Expr> factors) {
  RequireNonNull(factors);
  std::erase_if(factors, IsOne);
  for (const auto& f : factors) Require(LambdaLike(f), "Lambda products take Lambda factors only");
  if (factors.empty()) return One();
  if (factors.size() == 1) return factors[0];
  return Make(ExprOp::kProduct, Family::kLambda, std::move(factors));
}

Expr Mu(int relation, std::int64_t aut, std::vector<Expr> lambdas) {
  RequireNonNull(lambdas);
  Require(aut >= 1, "automorphism count must be positive");
  for (const auto& l : lambdas) Require(LambdaLike(l), "mu takes Lambda factors only");
  std::erase_if(lambdas, IsOne);
  std::vector<Expr> args;
  if (aut != 1) args.push_back(Constant(Rational(1, aut)));
  args.push_back(Beta(relation));
  for (auto& l : lambdas) args.push_back(std::move(l));
  return Make(ExprOp::kProduct, Family::kM, std::move(args));
}

Expr Gamma(Expr lambda, std::int64_t aut, const std::vector<int>& beta_exponents) {
  Require(lambda != nullptr && LambdaLike(lambda), "gamma takes a Lambda factor");
  Require(aut >= 1, "automorphism count must be positive");
  std::vector<Expr> args;
  if (aut != 1) args.push_back(Constant(Rational(1, aut)));
  for (std::size_t r = 0; r < beta_exponents.size(); ++r) {
    Require(beta_exponents[r] >= 0, "negative beta exponent");
    for (int i = 0; i < beta_exponents[r]; ++i) args.push_back(Beta(static_cast<int>(r)));
  }
  if (!IsOne(lambda)) args.push_back(std::move(lambda));
  return Make(ExprOp::kProduct, Family::kGamma, std::move(args));
}

Expr GammaSum(std::vector<Expr> terms) {
  RequireNonNull(terms);
  Require(!terms.empty(), "empty GammaSum");
  for (const auto& t : terms) Require(GammaLike(t), "GammaSum takes Gamma terms only");
  if (terms.size() == 1) return terms[0];
  return Make(ExprOp::kSum, Family::kGammaSum, std::move(terms));
}

Expr GammaProduct(std::vector<Expr> factors) {
  RequireNonNull(factors);
  std::erase_if(factors, IsOne);
  for (const auto& f : factors) {
    Require(GammaLike(f) || LambdaLike(f) || f->family == Family::kBeta ||
                f->family == Family::kConstant,
            "GammaProduct factor outside Gamma, Lambda, beta or constants");
  }
  if (factors.empty()) factors.push_back(One());
  return Make(ExprOp::kProduct, Family::kGammaSum, std::move(factors));
}

Expr UpsilonProduct(std::vector<Expr> factors) {
  RequireNonNull(factors);
  std::erase_if(factors, IsOne);
  bool sum = false;
  for (const auto& f : factors) {
    Require(UpsilonLike(f), "Upsilon products take Upsilon factors only");
    sum = sum || f->family == Family::kUpsilonSum;
  }
  if (factors.empty()) return One();
  if (factors.size() == 1) return factors[0];
  return Make(ExprOp::kProduct, sum ? Family::kUpsilonSum : Family::kUpsilon, std::move(factors));
}

Expr UpsilonSum(std::vector<Expr> terms) {
  RequireNonNull(terms);
  Require(!terms.empty(), "empty UpsilonSum");
  for (const auto& t : terms) Require(UpsilonLike(t), "UpsilonSum takes Upsilon terms only");
  if (terms.size() == 1) return terms[0];
  return Make(ExprOp::kSum, Family::kUpsilonSum, std::move(terms));
}

}  // namespace sym

double PoissonPmfValue(double mean, int n) {
  if (n < 0) return 0.0;
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

double PoissonTailValue(double mean, int n) {
  if (n <= 0) return 1.0;
  if (mean == 0.0) return 0.0;
  if (mean < n) {
    // Sum the decaying upper terms directly.
    double term = PoissonPmfValue(mean, n), sum = 0.0;
    for (int j = n; term > 0.0 && term > sum * 1e-17; ++j) {
      sum += term;
      term *= mean / (j + 1);
    }
    return sum;
  }
  double lower = 0.0;
  for (int j = 0; j < n; ++j) lower += PoissonPmfValue(mean, j);
  return std::max(0.0, 1.0 - lower);
}

Evaluator::Evaluator(std::vector<double> betas) : betas_(std::move(betas)) {
  for (double b : betas_) {
    if (!(b > 0.0)) throw Error(ErrorKind::kNonPositiveBeta, "beta values must be positive");
  }
}

double Evaluator::operator()(const Expr& e) {
  if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
  double v = 0.0;
  switch (e->op) {
    case ExprOp::kConstant:
      v = e->value.ToDouble();
      break;
    case ExprOp::kBeta:
      if (e->index >= static_cast<int>(betas_.size())) {
        throw Error(ErrorKind::kInvalidArgument, "no beta value for relation");
      }
      v = betas_[e->index];
      break;
    case ExprOp::kProduct:
      v = 1.0;
      for (const auto& a : e->args) v *= (*this)(a);
      break;
    case ExprOp::kSum:
      for (const auto& a : e->args) v += (*this)(a);
      break;
    case ExprOp::kPoissonPmf:
      v = PoissonPmfValue((*this)(e->args[0]), e->index);
      break;
    case ExprOp::kPoissonTail:
      v = PoissonTailValue((*this)(e->args[0]), e->index);
      break;
  }
  memo_.emplace(e.get(), v);
  return v;
}

double Eval(const Expr& e, const std::vector<double>& betas) {
  Evaluator ev(betas);
  return ev(e);
}

std::size_t ExprSize(const Expr& e) {
  std::unordered_set<const ExprNode*> seen;
  std::vector<const ExprNode*> stack = {e.get()};
  while (!stack.empty()) {
    const ExprNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& a : n->args) stack.push_back(a.get());
  }
  return seen.size();
}

std::string ToSExpr(const Expr& e, const Vocabulary& vocab) {
  std::unordered_map<const ExprNode*, int> parents;
  {
    std::vector<const ExprNode*> stack = {e.get()};
    std::unordered_set<const ExprNode*> seen;
    while (!stack.empty()) {
      const ExprNode* n = stack.back();
      stack.pop_back();
      if (!seen.insert(n).second) continue;
      for (const auto& a : n->args) {
        ++parents[a.get()];
        stack.push_back(a.get());
      }
    }
  }
  std::unordered_map<const ExprNode*, int> label;
  std::string out;
  std::function<void(const ExprNode*)> print = [&](const ExprNode* n) {
    const bool shared = parents[n] > 1 && !n->args.empty();
    if (shared) {
      if (auto it = label.find(n); it != label.end()) {
        out += "#" + std::to_string(it->second) + "#";
        return;
      }
      int id = static_cast<int>(label.size()) + 1;
      label.emplace(n, id);
      out += "#" + std::to_string(id) + "=";
    }
    switch (n->op) {
      case ExprOp::kConstant:
        out += n->value.ToString();
        return;
      case ExprOp::kBeta:
        out += "(beta " + vocab.relation(n->index).name + ")";
        return;
      case ExprOp::kProduct:
      case ExprOp::kSum:
        out += n->op == ExprOp::kProduct ? "(*" : "(+";
        for (const auto& a : n->args) {
          out += " ";
          print(a.get());
        }
        out += ")";
        return;
      case ExprOp::kPoissonPmf:
      case ExprOp::kPoissonTail:
        out += n->op == ExprOp::kPoissonPmf ? "(pmf " : "(tail ";
        print(n->args[0].get());
        out += " " + std::to_string(n->index) + ")";
        return;
    }
  };
  print(e.get());
  return out;
}

}  // namespace sparselimit
