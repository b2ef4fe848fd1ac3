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


#ifndef SPARSELIMIT_CNF_HPP_
#define SPARSELIMIT_CNF_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sparselimit/formula.hpp"
#include "sparselimit/hypergraph.hpp"

namespace sparselimit {

// +v is x_v, -v is its negation; variables are 1..n.
using Literal = std::int32_t;
using Clause = std::vector<Literal>;

// A set of non-tautological l-clauses. Each clause is stored negated block
// first, both blocks ascending by variable; clauses are sorted and unique.
class CnfFormula {
 public:
  CnfFormula() = default;
  // Throws InvalidArgument unless every clause has exactly l literals over
  // distinct variables in 1..n. Duplicates are merged.
  CnfFormula(int n, int l, std::vector<Clause> clauses);

  int num_vars() const { return n_; }
  int width() const { return l_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }

  // assignment[v] for v in 1..n (index 0 unused).
  bool Satisfies(const std::vector<char>& assignment) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  int n_ = 0;
  int l_ = 0;
  std::vector<Clause> clauses_;
};

Clause CanonicalClause(Clause c);

// R_0..R_l of arity l; R_j's group preserves {1..j} and {j+1..l}.
VocabularyPtr CnfVocabulary(int l);

struct CnfSampleConfig {
  int l = 3;
  std::int64_t n = 0;
  // beta (p = beta / n^(l-1)) or, with explicit_p, p itself.
  double density = 0;
  bool explicit_p = false;
  std::uint64_t seed = 0;
};

// F(l, n, p). Throws Overflow when the clause space is too large.
CnfFormula SampleCnf(const CnfSampleConfig& config);

// R_j(x_1..x_l) <-> the clause with x_1..x_j negated.
Hypergraph ToStructure(const CnfFormula& f);
// Throws BadRelation unless h is over a CNF vocabulary.
CnfFormula FromStructure(const Hypergraph& h);

enum class SatOutcome { kSat, kUnsat, kIndeterminate };
std::string_view SatOutcomeName(SatOutcome o);

struct SatResult {
  SatOutcome outcome = SatOutcome::kIndeterminate;
  // Satisfying assignment (index 0 unused) when kSat.
  std::vector<char> assignment;
  std::int64_t decisions = 0;
};

// DPLL: unit propagation, pure literals, branching on the variable with the
// most occurrences in open clauses. max_decisions <= 0 means unlimited;
// running out gives kIndeterminate.
SatResult DpllSat(const CnfFormula& f, std::int64_t max_decisions = 0);

std::string ToDimacs(const CnfFormula& f);
// Clause width is taken from the clauses (or l when there are none).
// Throws Syntax on malformed input.
CnfFormula ParseDimacs(std::string_view text, int l = 3);

struct ScanCell {
  int l = 0;
  double beta = 0;
  std::int64_t n = 0;
  int samples = 0;
  int hits = 0;           // satisfiable, or satisfying the sentence
  int indeterminate = 0;  // DPLL ran out of decisions
  int unsat = -1;         // certificate scans with DPLL: unsatisfiable count
  double p = 0;
  double stderr_ = 0;
};

struct ScanConfig {
  int l = 3;
  std::vector<double> betas;
  std::vector<std::int64_t> ns;
  int samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::int64_t max_decisions = 0;
};

// Empirical Pr(F^l_n(beta) satisfiable) per (beta, n).
std::vector<ScanCell> SatScan(const ScanConfig& config);

// exists x, y, z with all 2^l sign patterns of l-clauses over them present
// (l = 3 uses x, y, z; in general l variables). Implies unsatisfiability.
Formula CertificateSentence(int l = 3);
// Empirical Pr(F^l_n(beta) |= phi); with_dpll also counts unsatisfiable
// samples among the same formulas.
std::vector<ScanCell> CertificateScan(const Formula& phi, const ScanConfig& config,
                                      bool with_dpll = false, std::int64_t budget = 0);

// l,beta,n,samples,<column>,stderr[,indeterminate|p_unsat]
void WriteScanCsv(const std::vector<ScanCell>& cells, std::ostream& out, bool certificate);

}  // namespace sparselimit

#endif  // SPARSELIMIT_CNF_HPP_
