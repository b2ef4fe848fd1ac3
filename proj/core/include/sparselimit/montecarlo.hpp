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


#ifndef SPARSELIMIT_MONTECARLO_HPP_
#define SPARSELIMIT_MONTECARLO_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparselimit/formula.hpp"
#include "sparselimit/hypergraph.hpp"
#include "sparselimit/symexpr.hpp"

namespace sparselimit {

struct McConfig {
  VocabularyPtr vocab;
  DensityMap betas;
  std::int64_t n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  // Results do not depend on this.
  int workers = 1;
};

struct McRow {
  std::string statistic;
  double estimate = 0;
  double stderr_ = 0;
  // 95% interval: Wilson for probabilities, normal otherwise.
  double lo = 0;
  double hi = 0;
  std::optional<double> prediction;
  double tolerance = 0;
  bool pass = true;
};

struct McReport {
  std::int64_t n = 0;
  std::string beta;
  int samples = 0;
  std::vector<McRow> rows;
  bool passed() const;
  const McRow* Find(const std::string& statistic) const;
};

std::pair<double, double> WilsonInterval(std::int64_t successes, std::int64_t trials,
                                         double z = 1.96);
// max(0.02, 4 * stderr).
double DefaultTolerance(double stderr_);

// Calls fn(i, G_n) for every sample i, seeded from (seed, i), spread over
// the workers. fn must only write to per-sample slots.
void ForEachSample(const McConfig& cfg,
                          const std::function<void(int, const Hypergraph&)>& fn);

// Distribution of the ~k type of Tr(G_n, v; v; r) at the fixed vertex
// `root`, one row per type with Pr[r, t] as prediction.
McReport TreeTypeDistribution(const McConfig& cfg, int k, int r, Vertex root = 1);

// Histogram of the number of edges at the fixed vertex `root`.
std::vector<std::int64_t> RootDegreeHistogram(const McConfig& cfg, Vertex root = 1);
double TotalVariation(const std::vector<std::int64_t>& histogram,
                      const std::function<double(int)>& pmf);

// Components of Core(G_n; r) per cycle shape: mean count (prediction
// prod beta^|E_R| / aut) and index of dispersion (prediction 1). With
// classes set, also per (k, r)-cycle class against gamma.
McReport CycleCounts(const McConfig& cfg, int k, int r, bool classes = false,
                     int edge_cap = -1);

// Fraction of r-simple samples (prediction 1).
McReport SimpleFraction(const McConfig& cfg, int r);
// Fraction of (k, r)-rich samples (prediction 1). Toy sizes only.
McReport RichFraction(const McConfig& cfg, int k, int r);

// Empirical Pr(G_n |= phi); the limit expression, when given, is the
// prediction. Throws BudgetExceeded.
McReport SentenceProbability(const McConfig& cfg, const Formula& phi,
                             const Expr& limit = nullptr, std::int64_t budget = 0);

// statistic,n,beta,estimate,stderr,prediction,pass
void WriteMcCsv(const McReport& report, std::ostream& out, bool header = true);

}  // namespace sparselimit

#endif  // SPARSELIMIT_MONTECARLO_HPP_
