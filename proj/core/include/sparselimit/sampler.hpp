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


#ifndef SPARSELIMIT_SAMPLER_HPP_
#define SPARSELIMIT_SAMPLER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "sparselimit/hypergraph.hpp"
#include "sparselimit/vocabulary.hpp"

namespace sparselimit {

enum class Regime { kSparseBeta, kExplicitP };

struct SampleConfig {
  std::int64_t n = 0;
  Regime regime = Regime::kSparseBeta;
  // beta_R in the sparse regime, p_R in the explicit regime.
  DensityMap densities;
  std::uint64_t seed = 0;
  // Refuse samples whose expected edge count exceeds this.
  double max_expected_edges = 5e8;
};

// p_R = min(1, beta / n^(ar(R)-1)).
double SparseEdgeProbability(int arity, double beta, std::int64_t n);

// Per-relation inclusion probabilities for the configuration.
std::vector<double> EdgeProbabilities(const Vocabulary& vocab, const SampleConfig& config);

// One draw of G^C(n, {p_R}) on vertices 1..n: each orbit of E_R[n] is
// present independently with probability p_R.
Hypergraph Sample(const VocabularyPtr& vocab, const SampleConfig& config);

// Unranks a d-subset of {0..n-1} in colexicographic order; the result is
// increasing.
void UnrankColex(std::uint64_t rank, int d, std::int64_t n, Vertex* out);

}  // namespace sparselimit

#endif  // SPARSELIMIT_SAMPLER_HPP_
