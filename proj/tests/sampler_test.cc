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


#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "sparselimit/sampler.hpp"
#include "support/oracles.hpp"

namespace sparselimit {
namespace {

TEST(SamplerTest, UnrankColexEnumeratesAllSubsets) {
  for (int d = 1; d <= 4; ++d) {
    const int n = 9;
    std::set<std::vector<Vertex>> seen;
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count = count * (n - i) / (i + 1);
    std::vector<Vertex> prev;
    for (std::uint64_t r = 0; r < count; ++r) {
      std::vector<Vertex> s(d);
      UnrankColex(r, d, n, s.data());
      ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
      ASSERT_TRUE(std::adjacent_find(s.begin(), s.end()) == s.end());
      ASSERT_LT(s.back(), n);
      seen.insert(s);
    }
    EXPECT_EQ(seen.size(), count);
  }
}

TEST(SamplerTest, UnrankColexLargeN) {
  const std::int64_t n = 100000;
  Vertex s[2];
  std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  UnrankColex(total - 1, 2, n, s);
  EXPECT_EQ(s[0], n - 2);
  EXPECT_EQ(s[1], n - 1);
  UnrankColex(0, 2, n, s);
  EXPECT_EQ(s[0], 0);
  EXPECT_EQ(s[1], 1);
}

TEST(SamplerTest, MeanEdgeCount) {
  auto g = PresetVocabulary("graph");
  SampleConfig cfg;
  cfg.n = 10000;
  cfg.densities = DensityMap(*g, 1.0);
  const int samples = 1000;
  double sum = 0;
  double sum2 = 0;
  for (int s = 0; s < samples; ++s) {
    cfg.seed = 1000 + s;
    double e = Sample(g, cfg).num_edges();
    sum += e;
    sum2 += e * e;
  }
  double mean = sum / samples;
  double var = sum2 / samples - mean * mean;
  double expected = (cfg.n - 1) / 2.0;
  EXPECT_NEAR(mean, expected, 3 * std::sqrt(var / samples));
}

TEST(SamplerTest, ZeroDensityIsEmpty) {
  auto g = PresetVocabulary("graph");
  SampleConfig cfg;
  cfg.n = 500;
  cfg.densities = DensityMap(*g, 0.0);
  for (int s = 0; s < 5; ++s) {
    cfg.seed = s;
    Hypergraph h = Sample(g, cfg);
    EXPECT_EQ(h.num_edges(), 0);
    EXPECT_EQ(h.num_vertices(), 500);
  }
}

TEST(SamplerTest, Deterministic) {
  auto c = PresetVocabulary("cnf3");
  SampleConfig cfg;
  cfg.n = 300;
  cfg.densities = DensityMap(*c, 2.0);
  cfg.seed = 77;
  EXPECT_EQ(Sample(c, cfg), Sample(c, cfg));
  Hypergraph a = Sample(c, cfg);
  cfg.seed = 78;
  EXPECT_FALSE(Sample(c, cfg) == a);
}

TEST(SamplerTest, FullProbabilityGivesEverything) {
  auto d = PresetVocabulary("digraph-loops");
  SampleConfig cfg;
  cfg.n = 6;
  cfg.regime = Regime::kExplicitP;
  cfg.densities = DensityMap(*d, 1.0);
  EXPECT_EQ(Sample(d, cfg).num_edges(), 36);
}

// Per-orbit inclusion frequencies within four standard errors of p, and
// the per-pattern edge count is Binomial (chi-square on its histogram).
void CheckExactness(const char* name, int n, double p, int samples) {
  auto vocab = PresetVocabulary(name);
  SampleConfig cfg;
  cfg.n = n;
  cfg.regime = Regime::kExplicitP;
  cfg.densities = DensityMap(*vocab, p);
  std::vector<std::map<std::vector<Vertex>, int>> hits(vocab->size());
  std::vector<std::vector<std::vector<Vertex>>> orbits(vocab->size());
  for (int r = 0; r < vocab->size(); ++r) orbits[r] = oracle::AllOrbits(vocab->relation(r), n);
  std::vector<std::map<int, int>> count_hist(vocab->size());
  for (int s = 0; s < samples; ++s) {
    cfg.seed = 5000 + s;
    Hypergraph h = Sample(vocab, cfg);
    for (int r = 0; r < vocab->size(); ++r) {
      auto [lo, hi] = h.RelationRange(r);
      for (EdgeId e = lo; e < hi; ++e) {
        auto t = h.EdgeTuple(e);
        ++hits[r][std::vector<Vertex>(t.begin(), t.end())];
      }
      ++count_hist[r][hi - lo];
    }
  }
  const double se = std::sqrt(p * (1 - p) / samples);
  for (int r = 0; r < vocab->size(); ++r) {
    EXPECT_EQ(hits[r].size(), orbits[r].size()) << name;
    for (const auto& orbit : orbits[r]) {
      double freq = hits[r][orbit] / static_cast<double>(samples);
      EXPECT_NEAR(freq, p, 4 * se) << name;
    }
    // Chi-square of the total count against Binomial(|E_R[n]|, p), pooling
    // cells with small expectation.
    const int m = static_cast<int>(orbits[r].size());
    double chi2 = 0;
    int cells = 0;
    double pooled_obs = 0;
    double pooled_exp = 0;
    for (int k = 0; k <= m; ++k) {
      double logpmf = std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) +
                      k * std::log(p) + (m - k) * std::log1p(-p);
      double expect = samples * std::exp(logpmf);
      double obs = count_hist[r].count(k) ? count_hist[r][k] : 0;
      if (expect < 20) {
        pooled_obs += obs;
        pooled_exp += expect;
        continue;
      }
      chi2 += (obs - expect) * (obs - expect) / expect;
      ++cells;
    }
    if (pooled_exp > 0) {
      chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
      ++cells;
    }
    // Generous bound: mean cells-1, sd sqrt(2(cells-1)).
    double dof = cells - 1;
    EXPECT_LT(chi2, dof + 6 * std::sqrt(2 * dof) + 10) << name << " relation " << r;
  }
}

TEST(SamplerTest, ExactOrbitFrequencies) {
  CheckExactness("digraph-loops", 5, 0.3, 100000);
  CheckExactness("graph", 7, 0.2, 100000);
  CheckExactness("cnf2", 5, 0.25, 50000);
  CheckExactness("hypergraph3", 6, 0.4, 50000);
}

TEST(SamplerTest, OverflowBudget) {
  auto g = PresetVocabulary("hypergraph3");
  SampleConfig cfg;
  cfg.n = 100000;
  cfg.regime = Regime::kExplicitP;
  cfg.densities = DensityMap(*g, 0.5);
  EXPECT_THROW(Sample(g, cfg), Error);
}

}  // namespace
}  // namespace sparselimit
