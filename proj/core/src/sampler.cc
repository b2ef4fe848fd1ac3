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


#include "sparselimit/sampler.hpp"

#include <cmath>

#include "sparselimit/rng.hpp"

namespace sparselimit {
namespace {

// C(c, i) saturated at 2^63.
std::uint64_t Binom(std::int64_t c, int i) {
  if (c < i) return 0;
  unsigned __int128 b = 1;
  for (int j = 0; j < i; ++j) {
    b = b * static_cast<unsigned __int128>(c - j) / (j + 1);
    if (b >> 63) return std::uint64_t{1} << 63;
  }
  return static_cast<std::uint64_t>(b);
}

}  // namespace

double SparseEdgeProbability(int arity, double beta, std::int64_t n) {
  if (beta <= 0) return 0.0;
  double p = beta / std::pow(static_cast<double>(n), arity - 1);
  return std::min(1.0, p);
}

std::vector<double> EdgeProbabilities(const Vocabulary& vocab, const SampleConfig& config) {
  if (static_cast<int>(config.densities.size()) != vocab.size()) {
    throw Error(ErrorKind::kInvalidArgument, "density map does not match the vocabulary");
  }
  std::vector<double> p(vocab.size());
  for (int r = 0; r < vocab.size(); ++r) {
    double x = config.densities[r];
    if (!(x >= 0)) throw Error(ErrorKind::kInvalidArgument, "negative density");
    p[r] = config.regime == Regime::kSparseBeta
               ? SparseEdgeProbability(vocab.relation(r).arity, x, config.n)
               : std::min(1.0, x);
  }
  return p;
}

void UnrankColex(std::uint64_t rank, int d, std::int64_t n, Vertex* out) {
  std::int64_t hi = n - 1;
  for (int i = d; i >= 1; --i) {
    std::int64_t c;
    if (i == 1) {
      c = static_cast<std::int64_t>(rank);
    } else if (i == 2) {
      // Largest c with c(c-1)/2 <= rank.
      c = static_cast<std::int64_t>(
          std::floor((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(rank))) / 2.0));
      while (c > 1 && Binom(c, 2) > rank) --c;
      while (Binom(c + 1, 2) <= rank) ++c;
    } else {
      std::int64_t lo = i - 1;
      std::int64_t top = hi;
      while (lo < top) {
        std::int64_t mid = lo + (top - lo + 1) / 2;
        if (Binom(mid, i) <= rank) {
          lo = mid;
        } else {
          top = mid - 1;
        }
      }
      c = lo;
    }
    out[i - 1] = static_cast<Vertex>(c);
    rank -= Binom(c, i);
    hi = c - 1;
  }
}

Hypergraph Sample(const VocabularyPtr& vocab, const SampleConfig& config) {
  if (config.n < 1) throw Error(ErrorKind::kInvalidArgument, "n must be at least 1");
  if (config.n > (std::int64_t{1} << 30)) throw Error(ErrorKind::kOverflow, "n too large");
  std::vector<double> probs = EdgeProbabilities(*vocab, config);

  double expected = 0;
  for (int r = 0; r < vocab->size(); ++r) {
    expected += probs[r] * static_cast<double>(EdgeSpaceSize(vocab->Patterns(r), config.n));
  }
  if (expected > config.max_expected_edges) {
    throw Error(ErrorKind::kOverflow, "expected edge count " + std::to_string(expected) +
                                          " exceeds the budget");
  }

  Hypergraph::Builder builder(vocab);
  builder.AddVertexRange(1, static_cast<Vertex>(config.n + 1));
  builder.ReserveEdges(static_cast<std::size_t>(expected * 1.1 + 16));
  std::array<Vertex, kMaxArity> subset;
  std::array<Vertex, kMaxArity> tuple;
  for (int r = 0; r < vocab->size(); ++r) {
    const double p = probs[r];
    if (p <= 0) continue;
    const auto& patterns = vocab->Patterns(r);
    const int arity = vocab->relation(r).arity;
    for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
      const OrbitPattern& pat = patterns[pi];
      const std::uint64_t reps = pat.orbit_reps.size();
      const std::uint64_t subsets = Binom(config.n, pat.distinct);
      if (subsets == 0) continue;
      if (subsets >= (std::uint64_t{1} << 62) / reps) {
        throw Error(ErrorKind::kOverflow, "orbit index space exceeds 2^62");
      }
      const std::uint64_t total = subsets * reps;
      Engine eng = MakeEngine(config.seed, {static_cast<std::uint64_t>(r), pi});
      // Geometric skipping: gaps between present orbits are Geometric(p).
      const double log_q = p < 1 ? std::log1p(-p) : 0.0;
      std::uint64_t idx = 0;
      bool first = true;
      while (true) {
        if (p >= 1) {
          if (!first) ++idx;
        } else {
          double skip = std::floor(std::log(UniformOpen(eng)) / log_q);
          double next = (first ? 0.0 : static_cast<double>(idx) + 1.0) + skip;
          if (next >= static_cast<double>(total)) break;
          idx = static_cast<std::uint64_t>(next);
        }
        first = false;
        if (idx >= total) break;
        UnrankColex(idx / reps, pat.distinct, config.n, subset.data());
        const auto& rep = pat.orbit_reps[idx % reps];
        for (int i = 0; i < arity; ++i) tuple[i] = subset[rep[i]] + 1;
        builder.AddCanonicalEdgeUnchecked(r, std::span<const Vertex>(tuple.data(), arity));
      }
    }
  }
  return builder.Build();
}

}  // namespace sparselimit
