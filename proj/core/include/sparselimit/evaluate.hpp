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


#ifndef SPARSELIMIT_EVALUATE_HPP_
#define SPARSELIMIT_EVALUATE_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "sparselimit/formula.hpp"
#include "sparselimit/hypergraph.hpp"

namespace sparselimit {

struct EvaluateOptions {
  // Maximum number of quantifier-witness candidates tried; <= 0 means
  // unlimited.
  std::int64_t budget = 0;
};

// Tarskian truth of the formula in h. Quantifiers range over V(h); atoms
// are checked against canonical edges, so symmetric permutations of an edge
// hold and tuples violating anti-reflexivity are false. Throws
// UnboundVariable when a free variable has no value and BudgetExceeded when
// the candidate budget runs out.
bool Evaluate(const Hypergraph& h, const Formula& phi,
              const std::map<std::string, Vertex>& assignment = {},
              const EvaluateOptions& options = {});

}  // namespace sparselimit

#endif  // SPARSELIMIT_EVALUATE_HPP_
