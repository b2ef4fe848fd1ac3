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


#ifndef SPARSELIMIT_SYMEXPR_HPP_
#define SPARSELIMIT_SYMEXPR_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sparselimit/rational.hpp"
#include "sparselimit/vocabulary.hpp"

namespace sparselimit {

// Expression families. Lambda: products of 1 and Poisson terms with means
// in M. M: beta_R / b times a product of Lambda terms. Gamma: a Lambda term
// over b times a monomial in the betas. GammaSum: sums and products of
// Gamma, Lambda, beta and constant terms (finite sums of Gamma terms in
// factored form). Upsilon: Poisson terms with means in Gamma or GammaSum,
// and their products. UpsilonSum: sums of Upsilon terms and their products.
enum class Family { kConstant, kBeta, kLambda, kM, kGamma, kGammaSum, kUpsilon, kUpsilonSum };

std::string_view FamilyName(Family f);

enum class ExprOp { kConstant, kBeta, kProduct, kSum, kPoissonPmf, kPoissonTail };

struct ExprNode {
  ExprOp op;
  Family family;
  Rational value;  // kConstant
  int index = 0;   // kBeta: relation; Poisson terms: the count n
  std::vector<std::shared_ptr<const ExprNode>> args;
};

using Expr = std::shared_ptr<const ExprNode>;

// Constructors check the family grammar and throw Family otherwise.
namespace sym {

Expr One();
// Nonnegative rational constant.
Expr Constant(Rational c);
Expr Beta(int relation);
// Poiss_mean(n). A mean in M gives a Lambda term; a mean in Gamma or
// GammaSum gives an Upsilon term.
Expr PoissonPmf(Expr mean, int n);
// Poiss_mean(>= n).
Expr PoissonTail(Expr mean, int n);
// Product of Lambda terms (1 when empty).
Expr LambdaProduct(std::vector<Expr> factors);
// (beta_R / aut) * prod lambdas.
Expr Mu(int relation, std::int64_t aut, std::vector<Expr> lambdas);
// (lambda / aut) * prod_R beta_R^exponents[R].
Expr Gamma(Expr lambda, std::int64_t aut, const std::vector<int>& beta_exponents);
// Sum of Gamma or GammaSum terms.
Expr GammaSum(std::vector<Expr> terms);
// Product of a GammaSum (or Gamma, Lambda) term with Lambda, beta and
// constant factors.
Expr GammaProduct(std::vector<Expr> factors);
// Product of Upsilon or UpsilonSum terms (1 when empty).
Expr UpsilonProduct(std::vector<Expr> factors);
// Sum of Upsilon or UpsilonSum terms.
Expr UpsilonSum(std::vector<Expr> terms);

}  // namespace sym

// Numeric evaluation with per-node memoization (expressions are DAGs).
// Poisson terms are computed in log space. Throws NonPositiveBeta.
class Evaluator {
 public:
  explicit Evaluator(std::vector<double> betas);
  double operator()(const Expr& e);

 private:
  std::vector<double> betas_;
  std::unordered_map<const ExprNode*, double> memo_;
};

double Eval(const Expr& e, const std::vector<double>& betas);

// Poisson probabilities.
double PoissonPmfValue(double mean, int n);
double PoissonTailValue(double mean, int n);

// S-expression text: (* ...), (+ ...), (pmf MEAN n), (tail MEAN n),
// (beta NAME), rationals as p/q. Subexpressions used more than once are
// written once as #i=EXPR and referenced as #i#.
std::string ToSExpr(const Expr& e, const Vocabulary& vocab);

// Number of distinct nodes.
std::size_t ExprSize(const Expr& e);

}  // namespace sparselimit

#endif  // SPARSELIMIT_SYMEXPR_HPP_
