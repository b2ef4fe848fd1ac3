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


#include "sparselimit/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "sparselimit/errors.hpp"
#include "sparselimit/evaluate.hpp"
#include "sparselimit/limits.hpp"
#include "sparselimit/rng.hpp"
#include "sparselimit/sampler.hpp"
#include "sparselimit/structure.hpp"

namespace sparselimit {

bool McReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const McRow& r) { return r.pass; });
}

const McRow* McReport::Find(const std::string& statistic) const {
  for (const auto& r : rows) {
    if (r.statistic == statistic) return &r;
  }
  return nullptr;
}

std::pair<double, double> WilsonInterval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double DefaultTolerance(double stderr_) { return std::max(0.02, 4 * stderr_); }

namespace {

void CheckConfig(const McConfig& cfg) {
  if (!cfg.vocab) throw Error(ErrorKind::kInvalidArgument, "no vocabulary");
  if (cfg.n < 1) throw Error(ErrorKind::kInvalidArgument, "n must be at least 1");
  if (cfg.samples < 1) throw Error(ErrorKind::kInvalidArgument, "samples must be at least 1");
  if (static_cast<int>(cfg.betas.size()) != cfg.vocab->size()) {
    throw Error(ErrorKind::kInvalidArgument, "one density per relation is required");
  }
}

McReport NewReport(const McConfig& cfg) {
  McReport r;
  r.n = cfg.n;
  r.beta = cfg.betas.ToString(*cfg.vocab);
  r.samples = cfg.samples;
  return r;
}

McRow ProportionRow(std::string name, std::int64_t hits, std::int64_t trials,
                    std::optional<double> prediction) {
  McRow row;
  row.statistic = std::move(name);
  double p = static_cast<double>(hits) / static_cast<double>(trials);
  row.estimate = p;
  row.stderr_ = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  std::tie(row.lo, row.hi) = WilsonInterval(hits, trials);
  row.prediction = prediction;
  row.tolerance = DefaultTolerance(row.stderr_);
  row.pass = !prediction || std::abs(p - *prediction) <= row.tolerance;
  return row;
}

McRow MeanRow(std::string name, double mean, double stderr_, std::optional<double> prediction,
              double tolerance) {
  McRow row;
  row.statistic = std::move(name);
  row.estimate = mean;
  row.stderr_ = stderr_;
  row.lo = mean - 1.96 * stderr_;
  row.hi = mean + 1.96 * stderr_;
  row.prediction = prediction;
  row.tolerance = tolerance;
  row.pass = !prediction || std::abs(mean - *prediction) <= tolerance;
  return row;
}

}  // namespace

void ForEachSample(const McConfig& cfg, const std::function<void(int, const Hypergraph&)>& fn) {
  CheckConfig(cfg);
  auto run = [&](int i) {
    SampleConfig sc;
    sc.n = cfg.n;
    sc.densities = cfg.betas;
    sc.seed = DeriveSeed(cfg.seed, {static_cast<std::uint64_t>(i)});
    fn(i, Sample(cfg.vocab, sc));
  };
  int workers = std::max(1, std::min(cfg.workers, cfg.samples));
  if (workers == 1) {
    for (int i = 0; i < cfg.samples; ++i) run(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < cfg.samples;) {
        try {
          run(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          next = cfg.samples;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

McReport TreeTypeDistribution(const McConfig& cfg, int k, int r, Vertex root) {
  CheckConfig(cfg);
  if (root < 1 || root > cfg.n) throw Error(ErrorKind::kUnknownVertex, "root outside 1..n");
  LimitEngine eng(cfg.vocab, k, r);
  std::vector<int> observed(cfg.samples);
  ForEachSample(cfg, [&](int i, const Hypergraph& h) {
    observed[i] = eng.registry().TypeOf(LocalTree(h, root, r));
  });
  std::map<int, std::int64_t> counts;
  for (int t : observed) ++counts[t];
  McReport rep = NewReport(cfg);
  for (int t : eng.registry().TypesUpTo(r)) {
    double pred = Eval(eng.TreeTypeProb(r, t), cfg.betas.values());
    rep.rows.push_back(ProportionRow("type:" + eng.registry().SignatureString(t), counts[t],
                                     cfg.samples, pred));
  }
  return rep;
}

std::vector<std::int64_t> RootDegreeHistogram(const McConfig& cfg, Vertex root) {
  CheckConfig(cfg);
  if (root < 1 || root > cfg.n) throw Error(ErrorKind::kUnknownVertex, "root outside 1..n");
  std::vector<int> deg(cfg.samples);
  ForEachSample(cfg, [&](int i, const Hypergraph& h) { deg[i] = h.Degree(h.IndexOrThrow(root)); });
  std::vector<std::int64_t> hist;
  for (int d : deg) {
    if (d >= static_cast<int>(hist.size())) hist.resize(d + 1, 0);
    ++hist[d];
  }
  return hist;
}

double TotalVariation(const std::vector<std::int64_t>& histogram,
                      const std::function<double(int)>& pmf) {
  std::int64_t total = 0;
  for (auto c : histogram) total += c;
  if (total == 0) throw Error(ErrorKind::kInvalidArgument, "empty histogram");
  double tv = 0;
  double mass = 0;
  for (std::size_t d = 0; d < histogram.size(); ++d) {
    double p = pmf(static_cast<int>(d));
    mass += p;
    tv += std::abs(static_cast<double>(histogram[d]) / static_cast<double>(total) - p);
  }
  // Predicted mass beyond the observed range.
  tv += std::max(0.0, 1.0 - mass);
  return tv / 2;
}

McReport CycleCounts(const McConfig& cfg, int k, int r, bool classes, int edge_cap) {
  CheckConfig(cfg);
  LimitOptions opt;
  opt.edge_cap = edge_cap;
  LimitEngine eng(cfg.vocab, k, r, opt);
  const CycleWords& words = eng.words();
  // Shapes: bare key -> (label, prediction).
  std::map<std::vector<int>, std::pair<std::string, double>> shapes;
  auto shape_prediction = [&](const Hypergraph& cycle, std::int64_t aut) {
    double p = 1.0 / static_cast<double>(aut);
    for (EdgeId e = 0; e < cycle.num_edges(); ++e) p *= cfg.betas[cycle.EdgeRelation(e)];
    return p;
  };
  for (const CycleWord& w : eng.ShapeWords()) {
    ColoredCycle c = words.Build(w);
    std::int64_t aut = 1;
    std::vector<int> key = words.KeyOf(c.cycle, c.colors, &aut);
    std::string label = "L" + std::to_string(w.size()) + ":";
    for (const auto& s : w) label += std::to_string(s.letter) + ".";
    label.pop_back();
    shapes[key] = {label, shape_prediction(c.cycle, aut)};
  }
  std::vector<Expr> gammas;
  if (classes) {
    for (const auto& c : eng.Cycles()) gammas.push_back(eng.Gamma(c));
  }

  std::vector<std::map<std::vector<int>, int>> per_shape(cfg.samples);
  std::vector<std::map<int, int>> per_class(cfg.samples);
  std::vector<std::map<std::vector<int>, std::pair<std::string, double>>> loops(cfg.samples);
  ForEachSample(cfg, [&](int i, const Hypergraph& h) {
    Hypergraph core = Core(h, {}, r);
    for (const auto& comp : ConnectedComponents(core)) {
      Hypergraph sub = Induced(core, comp);
      Hypergraph center = Center(sub);
      if (center.num_edges() == 0 || Excess(center) != 0) continue;
      std::vector<int> zero(center.num_vertices(), 0);
      std::int64_t aut = 1;
      std::vector<int> key = words.KeyOf(center, zero, &aut);
      if (!shapes.count(key) && center.num_edges() == 1) {
        // Loop shapes are not spelled by words.
        loops[i].emplace(key, std::make_pair("loop:R" + std::to_string(center.EdgeRelation(0)),
                                             shape_prediction(center, aut)));
      }
      ++per_shape[i][key];
      if (classes) {
        std::vector<int> colors;
        for (Vertex v : center.vertices()) {
          colors.push_back(eng.registry().TypeOf(HangingTree(sub, {}, v)));
        }
        int id = eng.CycleId(words.KeyOf(center, colors));
        if (id >= 0) ++per_class[i][id];
      }
    }
  });

  for (auto& m : loops) shapes.insert(m.begin(), m.end());
  McReport rep = NewReport(cfg);
  double ns = cfg.samples;
  auto moments = [&](auto get) {
    double s = 0, s2 = 0;
    for (int i = 0; i < cfg.samples; ++i) {
      double x = get(i);
      s += x;
      s2 += x * x;
    }
    double mean = s / ns;
    double var = cfg.samples > 1 ? (s2 - ns * mean * mean) / (ns - 1) : 0.0;
    return std::make_pair(mean, std::max(0.0, var));
  };
  for (const auto& [key, info] : shapes) {
    auto [mean, var] = moments([&](int i) {
      auto it = per_shape[i].find(key);
      return it == per_shape[i].end() ? 0.0 : static_cast<double>(it->second);
    });
    double se = std::sqrt(var / ns);
    rep.rows.push_back(MeanRow("shape-mean:" + info.first, mean, se, info.second,
                               std::max(DefaultTolerance(se), 0.1 * info.second)));
    if (mean > 0) {
      double disp = var / mean;
      double dse = std::sqrt(1.0 / (ns * mean) + 2.0 / std::max(1.0, ns - 1));
      rep.rows.push_back(
          MeanRow("shape-dispersion:" + info.first, disp, dse, 1.0, std::max(0.1, 4 * dse)));
    }
  }
  for (std::size_t id = 0; id < gammas.size(); ++id) {
    auto [mean, var] = moments([&](int i) {
      auto it = per_class[i].find(static_cast<int>(id));
      return it == per_class[i].end() ? 0.0 : static_cast<double>(it->second);
    });
    double se = std::sqrt(var / ns);
    double pred = Eval(gammas[id], cfg.betas.values());
    rep.rows.push_back(MeanRow("class-mean:" + std::to_string(id), mean, se, pred,
                               DefaultTolerance(se)));
  }
  return rep;
}

McReport SimpleFraction(const McConfig& cfg, int r) {
  CheckConfig(cfg);
  std::vector<char> ok(cfg.samples);
  ForEachSample(cfg, [&](int i, const Hypergraph& h) { ok[i] = IsRSimple(h, r); });
  McReport rep = NewReport(cfg);
  rep.rows.push_back(ProportionRow("simple-fraction:r=" + std::to_string(r),
                                   std::count(ok.begin(), ok.end(), 1), cfg.samples, 1.0));
  return rep;
}

McReport RichFraction(const McConfig& cfg, int k, int r) {
  CheckConfig(cfg);
  TypeRegistry reg(cfg.vocab, k);
  if (!reg.Enumerate(r, 1 << 14)) {
    throw Error(ErrorKind::kCapExceeded, "tree types for the richness check");
  }
  std::vector<char> ok(cfg.samples);
  ForEachSample(cfg, [&](int i, const Hypergraph& h) { ok[i] = IsRich(h, reg, r); });
  McReport rep = NewReport(cfg);
  rep.rows.push_back(ProportionRow(
      "rich-fraction:k=" + std::to_string(k) + ",r=" + std::to_string(r),
      std::count(ok.begin(), ok.end(), 1), cfg.samples, 1.0));
  return rep;
}

McReport SentenceProbability(const McConfig& cfg, const Formula& phi, const Expr& limit,
                             std::int64_t budget) {
  CheckConfig(cfg);
  if (!phi.IsSentence()) throw Error(ErrorKind::kInvalidArgument, "phi must be a sentence");
  std::vector<char> truth(cfg.samples);
  EvaluateOptions opt;
  opt.budget = budget;
  ForEachSample(cfg, [&](int i, const Hypergraph& h) { truth[i] = Evaluate(h, phi, {}, opt); });
  std::optional<double> pred;
  if (limit) pred = Eval(limit, cfg.betas.values());
  McReport rep = NewReport(cfg);
  rep.rows.push_back(ProportionRow("sentence", std::count(truth.begin(), truth.end(), 1),
                                   cfg.samples, pred));
  return rep;
}

void WriteMcCsv(const McReport& report, std::ostream& out, bool header) {
  if (header) out << "statistic,n,beta,estimate,stderr,prediction,pass\n";
  auto old = out.precision(10);
  for (const auto& r : report.rows) {
    out << r.statistic << ',' << report.n << ",\"" << report.beta << "\"," << r.estimate << ','
        << r.stderr_ << ',';
    if (r.prediction) out << *r.prediction;
    out << ',' << (r.pass ? "true" : "false") << '\n';
  }
  out.precision(old);
}

}  // namespace sparselimit
