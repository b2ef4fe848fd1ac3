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


#ifndef SPARSELIMIT_TESTS_SUPPORT_LOGIC_HPP_
#define SPARSELIMIT_TESTS_SUPPORT_LOGIC_HPP_

#include <map>
#include <random>
#include <string>
#include <vector>

#include "sparselimit/formula.hpp"
#include "sparselimit/hypergraph.hpp"

namespace sparselimit::oracle {

// Textbook recursive evaluation: every quantifier tries every vertex.
bool NaiveEvaluate(const Hypergraph& h, const Formula& phi,
                   const std::map<std::string, Vertex>& assignment = {});

// Each orbit on vertices 1..n present independently with probability p.
Hypergraph RandomStructure(const VocabularyPtr& vocab, int n, double p, std::mt19937_64& rng);

// Random formula text of quantifier rank at most max_rank whose free
// variables are among free_vars.
std::string RandomFormula(const Vocabulary& vocab, int max_rank,
                          const std::vector<std::string>& free_vars, std::mt19937_64& rng);

// Battery of formulas of quantifier rank at most k with free variables
// among free_vars: every quantifier prefix of length <= k over fresh
// variables x1..xk followed by a matrix drawn from literals over the atom
// templates (all single literals, plus a seeded sample of two-literal
// conjunctions and disjunctions), capped at max_size per prefix.
std::vector<std::string> SentenceBattery(const Vocabulary& vocab, int k,
                                         const std::vector<std::string>& free_vars,
                                         int max_size, std::uint64_t seed);

}  // namespace sparselimit::oracle

#endif  // SPARSELIMIT_TESTS_SUPPORT_LOGIC_HPP_
