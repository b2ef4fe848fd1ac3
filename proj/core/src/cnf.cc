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


#include "sparselimit/cnf.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "sparselimit/errors.hpp"
#include "sparselimit/evaluate.hpp"
#include "sparselimit/rng.hpp"
#include "sparselimit/sampler.hpp"

namespace sparselimit {

Clause CanonicalClause(Clause c) {
  std::sort(c.begin(), c.end(), [](Literal a, Literal b) {
    if ((a < 0) != (b < 0)) return a < 0;
    return std::abs(a) < std::abs(b);
  });
  return c;
}

CnfFormula::CnfFormula(int n, int l, std::vector<Clause> clauses) : n_(n), l_(l) {
  if (n < 0 || l < 1) throw Error(ErrorKind::kInvalidArgument, "bad CNF dimensions");
  for (Clause& c : clauses) {
    if (static_cast<int>(c.size()) != l) {
      throw Error(ErrorKind::kInvalidArgument, "clause width differs from l");
    }
    std::vector<int> vars;
    for (Literal x : c) {
      if (x == 0 || std::abs(x) > n) throw Error(ErrorKind::kInvalidArgument, "bad literal");
      vars.push_back(std::abs(x));
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
      throw Error(ErrorKind::kInvalidArgument, "clause repeats a variable");
    }
    c = CanonicalClause(std::move(c));
  }
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  clauses_ = std::move(clauses);
}

bool CnfFormula::Satisfies(const std::vector<char>& assignment) const {
  if (static_cast<int>(assignment.size()) <= n_) return false;
  for (const Clause& c : clauses_) {
    bool sat = false;
    for (Literal x : c) sat = sat || (assignment[std::abs(x)] != 0) == (x > 0);
    if (!sat) return false;
  }
  return true;
}

VocabularyPtr CnfVocabulary(int l) {
  static std::mutex mu;
  static std::map<int, VocabularyPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& v = cache[l];
  if (!v) v = PresetVocabulary("cnf" + std::to_string(l));
  return v;
}

Hypergraph ToStructure(const CnfFormula& f) {
  Hypergraph::Builder b(CnfVocabulary(f.width()));
  if (f.num_vars() > 0) b.AddVertexRange(1, f.num_vars() + 1);
  std::vector<Vertex> t(f.width());
  for (const Clause& c : f.clauses()) {
    int j = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      t[i] = std::abs(c[i]);
      j += c[i] < 0;
    }
    b.AddCanonicalEdgeUnchecked(j, t);
  }
  return b.Build();
}

CnfFormula FromStructure(const Hypergraph& h) {
  const Vocabulary& v = h.vocabulary();
  int l = v.size() - 1;
  bool ok = l >= 1;
  for (int j = 0; ok && j <= l; ++j) {
    ok = v.relation(j).arity == l && v.relation(j).name == "R" + std::to_string(j);
  }
  if (!ok) throw Error(ErrorKind::kBadRelation, "structure is not over a CNF vocabulary");
  int n = 0;
  for (Vertex x : h.vertices()) {
    if (x < 1) throw Error(ErrorKind::kBadRelation, "CNF variables are positive");
    n = std::max(n, static_cast<int>(x));
  }
  std::vector<Clause> clauses;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    int j = h.EdgeRelation(e);
    Clause c;
    int i = 0;
    for (Vertex x : h.EdgeTuple(e)) c.push_back(i++ < j ? -x : x);
    clauses.push_back(std::move(c));
  }
  return CnfFormula(n, l, std::move(clauses));
}

CnfFormula SampleCnf(const CnfSampleConfig& config) {
  if (config.l < 2) throw Error(ErrorKind::kInvalidArgument, "clause width must be at least 2");
  VocabularyPtr vocab = CnfVocabulary(config.l);
  SampleConfig sc;
  sc.n = config.n;
  sc.regime = config.explicit_p ? Regime::kExplicitP : Regime::kSparseBeta;
  sc.densities = DensityMap(*vocab, config.density);
  sc.seed = config.seed;
  Hypergraph h = Sample(vocab, sc);
  CnfFormula f = FromStructure(h);
  return CnfFormula(static_cast<int>(config.n), config.l, f.clauses());
}

std::string_view SatOutcomeName(SatOutcome o) {
  switch (o) {
    case SatOutcome::kSat: return "sat";
    case SatOutcome::kUnsat: return "unsat";
    case SatOutcome::kIndeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

class Dpll {
 public:
  Dpll(const CnfFormula& f, std::int64_t max_decisions)
      : f_(f),
        max_decisions_(max_decisions),
        value_(f.num_vars() + 1, -1),
        occ_(2 * (f.num_vars() + 1)),
        active_(2 * (f.num_vars() + 1), 0),
        weight_(2 * (f.num_vars() + 1), 0.0),
        nfalse_(f.size(), 0),
        nsat_(f.size(), 0),
        open_(static_cast<int>(f.size())) {
    for (std::size_t c = 0; c < f.size(); ++c) {
      for (Literal x : f.clauses()[c]) {
        occ_[Index(x)].push_back(static_cast<int>(c));
        ++active_[Index(x)];
      }
    }
  }

  SatResult Run() {
    SatResult res;
    std::vector<Literal> units;
    for (const Clause& c : f_.clauses()) {
      if (c.size() == 1) units.push_back(c[0]);
    }
    bool sat = false;
    try {
      sat = Propagate(units) && Solve();
    } catch (const OutOfDecisions&) {
      res.outcome = SatOutcome::kIndeterminate;
      res.decisions = decisions_;
      return res;
    }
    res.decisions = decisions_;
    if (!sat) {
      res.outcome = SatOutcome::kUnsat;
      return res;
    }
    res.outcome = SatOutcome::kSat;
    res.assignment.assign(f_.num_vars() + 1, 0);
    for (int v = 1; v <= f_.num_vars(); ++v) res.assignment[v] = value_[v] == 1;
    if (!f_.Satisfies(res.assignment)) {
      throw Error(ErrorKind::kInvalidArgument, "internal error: DPLL model check failed");
    }
    return res;
  }

 private:
  struct OutOfDecisions {};

  static int Index(Literal x) { return x > 0 ? 2 * x : 2 * -x + 1; }
  int Value(Literal x) const {
    int v = value_[std::abs(x)];
    return v < 0 ? -1 : (x > 0 ? v : 1 - v);
  }

  // Makes x true; pushes implied units. False on conflict (counters are
  // updated fully either way).
  bool Assign(Literal x, std::vector<Literal>& units) {
    value_[std::abs(x)] = x > 0;
    trail_.push_back(x);
    for (int c : occ_[Index(x)]) {
      if (nsat_[c]++ == 0) {
        --open_;
        for (Literal y : f_.clauses()[c]) --active_[Index(y)];
      }
    }
    bool ok = true;
    for (int c : occ_[Index(-x)]) {
      int nf = ++nfalse_[c];
      if (nsat_[c] > 0) continue;
      int size = static_cast<int>(f_.clauses()[c].size());
      if (nf == size) {
        ok = false;
      } else if (nf == size - 1) {
        for (Literal y : f_.clauses()[c]) {
          if (Value(y) < 0) units.push_back(y);
        }
      }
    }
    return ok;
  }

  void Unassign(Literal x) {
    for (int c : occ_[Index(-x)]) --nfalse_[c];
    for (int c : occ_[Index(x)]) {
      if (--nsat_[c] == 0) {
        ++open_;
        for (Literal y : f_.clauses()[c]) ++active_[Index(y)];
      }
    }
    value_[std::abs(x)] = -1;
  }

  void UndoTo(std::size_t mark) {
    while (trail_.size() > mark) {
      Unassign(trail_.back());
      trail_.pop_back();
    }
  }

  bool Propagate(std::vector<Literal>& units) {
    while (!units.empty()) {
      Literal x = units.back();
      units.pop_back();
      int v = Value(x);
      if (v == 1) continue;
      if (v == 0 || !Assign(x, units)) return false;
    }
    return true;
  }

  bool Solve() {
    std::size_t mark = trail_.size();
    // Pure literals never falsify an open clause.
    for (bool changed = true; changed && open_ > 0;) {
      changed = false;
      std::vector<Literal> none;
      for (int v = 1; v <= f_.num_vars(); ++v) {
        if (value_[v] >= 0) continue;
        int pos = active_[Index(v)], neg = active_[Index(-v)];
        if ((pos > 0) != (neg > 0)) {
          Assign(pos > 0 ? v : -v, none);
          changed = true;
        }
      }
    }
    if (open_ == 0) return true;
    // Weight literals by the open clauses they occur in, shorter clauses
    // counting more; branch on the best product of both polarities.
    std::fill(weight_.begin(), weight_.end(), 0.0);
    for (std::size_t c = 0; c < f_.size(); ++c) {
      if (nsat_[c] > 0) continue;
      const Clause& cl = f_.clauses()[c];
      int len = static_cast<int>(cl.size()) - nfalse_[c];
      double w = std::ldexp(1.0, -2 * len);
      for (Literal y : cl) {
        if (Value(y) < 0) weight_[Index(y)] += w;
      }
    }
    int best = 0;
    double score = -1;
    for (int v = 1; v <= f_.num_vars(); ++v) {
      if (value_[v] >= 0) continue;
      double p = weight_[Index(v)], q = weight_[Index(-v)];
      double s = p * q * 1024 + p + q;
      if (s > score) {
        score = s;
        best = v;
      }
    }
    if (best == 0) {
      UndoTo(mark);
      return false;
    }
    Literal first = weight_[Index(best)] >= weight_[Index(-best)] ? best : -best;
    for (Literal x : {first, -first}) {
      if (max_decisions_ > 0 && decisions_ >= max_decisions_) throw OutOfDecisions{};
      ++decisions_;
      std::size_t inner = trail_.size();
      std::vector<Literal> units;
      if (Assign(x, units) && Propagate(units) && Solve()) return true;
      UndoTo(inner);
    }
    UndoTo(mark);
    return false;
  }

  const CnfFormula& f_;
  std::int64_t max_decisions_;
  std::int64_t decisions_ = 0;
  std::vector<int> value_;
  std::vector<std::vector<int>> occ_;
  std::vector<int> active_;
  std::vector<double> weight_;
  std::vector<int> nfalse_;
  std::vector<int> nsat_;
  int open_;
  std::vector<Literal> trail_;
};

}  // namespace

SatResult DpllSat(const CnfFormula& f, std::int64_t max_decisions) {
  return Dpll(f, max_decisions).Run();
}

std::string ToDimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars() << ' ' << f.size() << '\n';
  for (const Clause& c : f.clauses()) {
    for (Literal x : c) os << x << ' ';
    os << "0\n";
  }
  return os.str();
}

CnfFormula ParseDimacs(std::string_view text, int l) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> long long {
    skip_space();
    std::size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && text[start] == '-')) {
      throw SyntaxError(start, "expected an integer");
    }
    return std::stoll(std::string(text.substr(start, pos - start)));
  };
  long long n = -1, m = -1;
  std::vector<Clause> clauses;
  Clause cur;
  while (true) {
    skip_space();
    if (pos >= text.size()) break;
    char ch = text[pos];
    if (ch == 'c' || ch == '%') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
      continue;
    }
    if (ch == 'p') {
      std::size_t start = pos;
      if (n >= 0) throw SyntaxError(start, "duplicate problem line");
      ++pos;
      skip_space();
      if (text.substr(pos, 3) != "cnf") throw SyntaxError(pos, "expected 'cnf'");
      pos += 3;
      n = read_int();
      m = read_int();
      if (n < 0 || m < 0) throw SyntaxError(start, "negative sizes");
      continue;
    }
    if (n < 0) throw SyntaxError(pos, "clause before the problem line");
    std::size_t start = pos;
    long long x = read_int();
    if (x == 0) {
      if (cur.empty()) throw SyntaxError(start, "empty clause");
      clauses.push_back(std::move(cur));
      cur.clear();
    } else {
      if (std::llabs(x) > n) throw SyntaxError(start, "literal out of range");
      cur.push_back(static_cast<Literal>(x));
    }
  }
  if (n < 0) throw SyntaxError(0, "missing problem line");
  if (!cur.empty()) throw SyntaxError(text.size(), "unterminated clause");
  if (static_cast<long long>(clauses.size()) != m) {
    throw SyntaxError(text.size(), "clause count differs from the problem line");
  }
  if (!clauses.empty()) l = static_cast<int>(clauses[0].size());
  try {
    return CnfFormula(static_cast<int>(n), l, std::move(clauses));
  } catch (const Error& e) {
    throw SyntaxError(text.size(), e.what());
  }
}

namespace {

void ParallelFor(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t CellSeed(const ScanConfig& c, double beta, std::int64_t n, int i) {
  return DeriveSeed(c.seed, {static_cast<std::uint64_t>(c.l), std::bit_cast<std::uint64_t>(beta),
                             static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i)});
}

void CheckScan(const ScanConfig& c) {
  if (c.samples < 1) throw Error(ErrorKind::kInvalidArgument, "samples must be at least 1");
  if (c.l < 2) throw Error(ErrorKind::kInvalidArgument, "clause width must be at least 2");
  for (auto n : c.ns) {
    if (n < 1) throw Error(ErrorKind::kInvalidArgument, "n must be at least 1");
  }
}

template <typename F>
std::vector<ScanCell> Scan(const ScanConfig& config, F per_sample) {
  CheckScan(config);
  std::vector<ScanCell> out;
  for (double beta : config.betas) {
    for (std::int64_t n : config.ns) {
      std::vector<int> result(config.samples);
      ParallelFor(config.samples, config.workers, [&](int i) {
        CnfSampleConfig sc;
        sc.l = config.l;
        sc.n = n;
        sc.density = beta;
        sc.seed = CellSeed(config, beta, n, i);
        result[i] = per_sample(SampleCnf(sc));
      });
      ScanCell cell;
      cell.l = config.l;
      cell.beta = beta;
      cell.n = n;
      cell.samples = config.samples;
      for (int r : result) {
        cell.hits += (r & 1) != 0;
        cell.indeterminate += (r & 2) != 0;
        if (r & 8) cell.unsat = std::max(cell.unsat, 0) + ((r & 4) != 0);
      }
      cell.p = static_cast<double>(cell.hits) / cell.samples;
      cell.stderr_ = std::sqrt(cell.p * (1 - cell.p) / cell.samples);
      out.push_back(cell);
    }
  }
  return out;
}

}  // namespace

std::vector<ScanCell> SatScan(const ScanConfig& config) {
  return Scan(config, [&](const CnfFormula& f) {
    SatOutcome o = DpllSat(f, config.max_decisions).outcome;
    return (o == SatOutcome::kSat ? 1 : 0) | (o == SatOutcome::kIndeterminate ? 2 : 0);
  });
}

Formula CertificateSentence(int l) {
  if (l < 2) throw Error(ErrorKind::kInvalidArgument, "clause width must be at least 2");
  std::vector<std::string> vars;
  if (l == 3) {
    vars = {"x", "y", "z"};
  } else {
    for (int i = 1; i <= l; ++i) vars.push_back("v" + std::to_string(i));
  }
  std::string text;
  for (const auto& v : vars) text += "exists " + v + ". ";
  text += "(";
  for (int mask = 0; mask < (1 << l); ++mask) {
    std::vector<std::string> neg, pos;
    for (int i = 0; i < l; ++i) ((mask >> i) & 1 ? neg : pos).push_back(vars[i]);
    if (mask) text += " and ";
    text += "R" + std::to_string(neg.size()) + "(";
    bool first = true;
    for (const auto* block : {&neg, &pos}) {
      for (const auto& v : *block) {
        if (!first) text += ",";
        text += v;
        first = false;
      }
    }
    text += ")";
  }
  text += ")";
  return Formula::Parse(text, CnfVocabulary(l));
}

std::vector<ScanCell> CertificateScan(const Formula& phi, const ScanConfig& config,
                                      bool with_dpll, std::int64_t budget) {
  if (phi.vocabulary().name() != "cnf" + std::to_string(config.l)) {
    throw Error(ErrorKind::kBadRelation, "sentence is not over the cnf" +
                                             std::to_string(config.l) + " vocabulary");
  }
  if (!phi.IsSentence()) throw Error(ErrorKind::kInvalidArgument, "phi must be a sentence");
  EvaluateOptions opt;
  opt.budget = budget;
  return Scan(config, [&](const CnfFormula& f) {
    Hypergraph h = ToStructure(f);
    // Evaluate over the formula's own vocabulary object.
    int r = Evaluate(h, phi, {}, opt) ? 1 : 0;
    if (with_dpll) {
      SatOutcome o = DpllSat(f, config.max_decisions).outcome;
      r |= 8 | (o == SatOutcome::kUnsat ? 4 : 0) | (o == SatOutcome::kIndeterminate ? 2 : 0);
    }
    return r;
  });
}

void WriteScanCsv(const std::vector<ScanCell>& cells, std::ostream& out, bool certificate) {
  out << "l,beta,n,samples," << (certificate ? "p_cert" : "p_sat") << ",stderr,"
      << (certificate ? "p_unsat" : "indeterminate") << '\n';
  auto old = out.precision(10);
  for (const auto& c : cells) {
    out << c.l << ',' << c.beta << ',' << c.n << ',' << c.samples << ',' << c.p << ','
        << c.stderr_ << ',';
    if (certificate) {
      if (c.unsat >= 0) out << static_cast<double>(c.unsat) / c.samples;
    } else {
      out << c.indeterminate;
    }
    out << '\n';
  }
  out.precision(old);
}

}  // namespace sparselimit
