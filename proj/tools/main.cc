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


#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "json.hpp"
#include "sparselimit/cnf.hpp"
#include "sparselimit/errors.hpp"
#include "sparselimit/evaluate.hpp"
#include "sparselimit/formula.hpp"
#include "sparselimit/limits.hpp"
#include "sparselimit/montecarlo.hpp"
#include "sparselimit/sampler.hpp"
#include "sparselimit/structure_io.hpp"
#include "sparselimit/symexpr.hpp"
#include "sparselimit/tree_types.hpp"

namespace sparselimit::cli {
namespace {

using nlohmann::json;

struct Common {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  int workers = DefaultWorkers();
};

void AddOut(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "Output file (default: stdout)");
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

void AddRandom(CLI::App* app, Common& c) {
  c.seed_opt = app->add_option("--seed", c.seed,
                               "RNG seed (fallback: SPARSELIMIT_SEED, else generated)");
  app->add_option("--workers", c.workers, "Worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);
}

SeedChoice Seed(const Common& c) {
  return ChooseSeed(c.seed_opt->count() ? std::optional<std::uint64_t>(c.seed) : std::nullopt);
}

std::string Render(const Hypergraph& h) {
  std::string s;
  const Vocabulary& v = h.vocabulary();
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (!s.empty()) s += ' ';
    s += v.relation(h.EdgeRelation(e)).name + "(";
    bool first = true;
    for (Vertex x : h.EdgeTuple(e)) {
      if (!first) s += ',';
      s += std::to_string(x);
      first = false;
    }
    s += ')';
  }
  return s;
}

json StructureJson(const Hypergraph& h) {
  json edges = json::array();
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto t = h.EdgeTuple(e);
    edges.push_back({{"relation", h.vocabulary().relation(h.EdgeRelation(e)).name},
                     {"tuple", std::vector<Vertex>(t.begin(), t.end())}});
  }
  auto vs = h.vertices();
  return {{"vocabulary", h.vocabulary().name()},
          {"vertices", std::vector<Vertex>(vs.begin(), vs.end())},
          {"edges", edges}};
}

std::string Csv(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string Num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// ---- sample

struct SampleArgs {
  Common c;
  std::string vocab;
  std::int64_t n = 0;
  std::string beta;
  bool explicit_p = false;
};

void RunSample(const SampleArgs& a) {
  Manifest m("sample");
  VocabularyPtr vocab = ResolveVocabulary(a.vocab);
  SeedChoice seed = Seed(a.c);
  m.SetSeed(seed);
  m.config() = {{"vocab", a.vocab}, {"n", a.n}, {"beta", a.beta}, {"p", a.explicit_p}};
  SampleConfig sc;
  sc.n = a.n;
  sc.regime = a.explicit_p ? Regime::kExplicitP : Regime::kSparseBeta;
  sc.densities = DensityMap::Parse(*vocab, a.beta);
  sc.seed = seed.seed;
  Hypergraph h = Sample(vocab, sc);
  m.Set("edges", h.num_edges());
  Emit(a.c.out, a.c.format == "json" ? StructureJson(h).dump(2) + "\n" : StructureToString(h));
  m.Write(a.c.out);
}

// ---- check

struct CheckArgs {
  Common c;
  std::string vocab, structure, formula;
  std::int64_t budget = 0;
};

void RunCheck(const CheckArgs& a) {
  VocabularyPtr vocab = ResolveVocabulary(a.vocab);
  Hypergraph h = LoadStructure(a.structure, vocab);
  Formula phi = Formula::Parse(a.formula, vocab);
  if (!phi.IsSentence()) throw Error(ErrorKind::kUnboundVariable, "formula has free variables");
  EvaluateOptions opt;
  opt.budget = a.budget;
  bool sat = Evaluate(h, phi, {}, opt);
  if (a.c.format == "json") {
    Emit(a.c.out, json{{"satisfied", sat}, {"formula", phi.ToString()}}.dump(2) + "\n");
  } else {
    Emit(a.c.out, sat ? "true\n" : "false\n");
  }
}

// ---- tree-types

struct TreeTypesArgs {
  Common c;
  std::string vocab;
  int k = 1, r = 1;
  std::size_t cap = 1 << 16;
};

void RunTreeTypes(const TreeTypesArgs& a) {
  TypeRegistryPtr reg = EnumerateTreeTypes(ResolveVocabulary(a.vocab), a.k, a.r, a.cap);
  std::vector<int> ids = reg->TypesUpTo(a.r);
  if (a.c.format == "json") {
    json rows = json::array();
    for (int id : ids) {
      RootedTree t = reg->Representative(id);
      rows.push_back({{"id", id},
                      {"radius", reg->type(id).radius},
                      {"signature", reg->SignatureString(id)},
                      {"representative", Render(t.tree)}});
    }
    Emit(a.c.out, json{{"k", a.k}, {"r", a.r}, {"types", rows}}.dump(2) + "\n");
    return;
  }
  std::string out = "id,radius,signature,representative\n";
  for (int id : ids) {
    RootedTree t = reg->Representative(id);
    out += std::to_string(id) + "," + std::to_string(reg->type(id).radius) + "," +
           Csv(reg->SignatureString(id)) + "," + Csv(Render(t.tree)) + "\n";
  }
  Emit(a.c.out, out);
}

// ---- limit

struct LimitArgs {
  Common c;
  std::string vocab, formula, grid = "1", terms_out;
  int override_r = -1;
};

void RunLimit(const LimitArgs& a) {
  Manifest m("limit");
  VocabularyPtr vocab = ResolveVocabulary(a.vocab);
  Formula phi = Formula::Parse(a.formula, vocab);
  std::vector<double> grid = ParseGrid(a.grid, "--beta-grid");
  for (double b : grid) {
    if (b <= 0) throw UsageError("--beta-grid: values must be positive");
  }
  m.config() = {{"vocab", a.vocab}, {"formula", a.formula}, {"beta_grid", a.grid},
                {"override_r", a.override_r}};
  LimitResult res = LimitProbability(phi, a.override_r);
  std::cerr << "k = " << res.k << ", r = " << res.r
            << (res.radius_overridden ? " (override)" : " (default (3^k-1)/2)") << "\n";
  m.Set("k", res.k);
  m.Set("r", res.r);
  m.Set("radius_overridden", res.radius_overridden);
  std::vector<std::vector<double>> betas;
  for (double b : grid) betas.emplace_back(vocab->size(), b);
  std::vector<double> values;
  for (const auto& bs : betas) values.push_back(Eval(res.value, bs));
  auto term_values = [&](const LimitTerm& t) {
    std::vector<double> v;
    for (const auto& bs : betas) v.push_back(Eval(t.prob, bs));
    return v;
  };
  if (a.c.format == "json") {
    json points = json::array(), terms = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      points.push_back({{"beta", grid[i]}, {"value", values[i]}});
    }
    for (const auto& t : res.terms) {
      terms.push_back({{"id", t.id},
                       {"truth", t.truth},
                       {"expression", ToSExpr(t.prob, *vocab)},
                       {"description", t.description},
                       {"values", term_values(t)}});
    }
    Emit(a.c.out, json{{"k", res.k},
                       {"r", res.r},
                       {"radius_overridden", res.radius_overridden},
                       {"expression", ToSExpr(res.value, *vocab)},
                       {"points", points},
                       {"terms", terms}}
                      .dump(2) +
                      "\n");
  } else {
    std::string out = "beta,value\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out += Num(grid[i]) + "," + Num(values[i]) + "\n";
    }
    Emit(a.c.out, out);
  }
  if (!a.terms_out.empty()) {
    std::string out = "id,truth,expression";
    for (double b : grid) out += ",beta=" + Num(b);
    out += "\n";
    for (const auto& t : res.terms) {
      out += std::to_string(t.id) + "," + (t.truth ? "1" : "0") + "," +
             Csv(ToSExpr(t.prob, *vocab));
      for (double v : term_values(t)) out += "," + Num(v);
      out += "\n";
    }
    Emit(a.terms_out, out);
  }
  m.Write(a.c.out);
}

// ---- mc

struct McArgs {
  Common c;
  std::string vocab, stat, beta, ns, formula;
  int samples = 0, k = 1, r = 1, edge_cap = -1, override_r = -1;
  bool classes = false, with_limit = false;
  std::int64_t budget = 0;
  Vertex root = 1;
};

void RunMc(const McArgs& a) {
  Manifest m("mc");
  VocabularyPtr vocab = ResolveVocabulary(a.vocab);
  SeedChoice seed = Seed(a.c);
  m.SetSeed(seed);
  std::vector<std::int64_t> ns = ParseIntList(a.ns, "--n");
  m.config() = {{"vocab", a.vocab}, {"stat", a.stat},   {"beta", a.beta},
                {"n", a.ns},        {"samples", a.samples}, {"k", a.k},
                {"r", a.r},         {"formula", a.formula}, {"classes", a.classes},
                {"edge_cap", a.edge_cap}, {"with_limit", a.with_limit},
                {"override_r", a.override_r}, {"budget", a.budget}, {"root", a.root}};
  std::optional<Formula> phi;
  Expr limit;
  if (a.stat == "sentence") {
    if (a.formula.empty()) throw UsageError("--formula is required for --stat sentence");
    phi = Formula::Parse(a.formula, vocab);
    if (a.with_limit) limit = LimitProbability(*phi, a.override_r).value;
  }
  std::vector<McReport> reports;
  for (std::int64_t n : ns) {
    McConfig cfg;
    cfg.vocab = vocab;
    cfg.betas = DensityMap::Parse(*vocab, a.beta);
    cfg.n = n;
    cfg.samples = a.samples;
    cfg.seed = seed.seed;
    cfg.workers = a.c.workers;
    if (a.stat == "tree-type-dist") {
      reports.push_back(TreeTypeDistribution(cfg, a.k, a.r, a.root));
    } else if (a.stat == "cycle-counts") {
      reports.push_back(CycleCounts(cfg, a.k, a.r, a.classes, a.edge_cap));
    } else if (a.stat == "simple-fraction") {
      reports.push_back(SimpleFraction(cfg, a.r));
    } else if (a.stat == "rich-fraction") {
      reports.push_back(RichFraction(cfg, a.k, a.r));
    } else {
      reports.push_back(SentenceProbability(cfg, *phi, limit, a.budget));
    }
  }
  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.passed();
  m.Set("all_pass", all_pass);
  if (a.c.format == "json") {
    json out = json::array();
    for (const auto& rep : reports) {
      json rows = json::array();
      for (const auto& r : rep.rows) {
        rows.push_back({{"statistic", r.statistic},
                        {"estimate", r.estimate},
                        {"stderr", r.stderr_},
                        {"lo", r.lo},
                        {"hi", r.hi},
                        {"prediction", r.prediction ? json(*r.prediction) : json(nullptr)},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass}});
      }
      out.push_back({{"n", rep.n}, {"beta", rep.beta}, {"samples", rep.samples}, {"rows", rows}});
    }
    Emit(a.c.out, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (std::size_t i = 0; i < reports.size(); ++i) WriteMcCsv(reports[i], os, i == 0);
    Emit(a.c.out, os.str());
  }
  m.Write(a.c.out);
}

// ---- sat-scan / cert-scan

struct ScanArgs {
  Common c;
  int l = 3, samples = 0;
  std::string betas, ns, formula;
  std::int64_t max_decisions = 0, budget = 0;
  bool with_dpll = false;
};

void EmitScan(const ScanArgs& a, const std::vector<ScanCell>& cells, bool certificate) {
  if (a.c.format == "json") {
    json out = json::array();
    for (const auto& c : cells) {
      json row = {{"l", c.l},          {"beta", c.beta},    {"n", c.n},
                  {"samples", c.samples}, {certificate ? "p_cert" : "p_sat", c.p},
                  {"stderr", c.stderr_}};
      if (certificate && c.unsat >= 0) row["p_unsat"] = static_cast<double>(c.unsat) / c.samples;
      if (!certificate) row["indeterminate"] = c.indeterminate;
      out.push_back(row);
    }
    Emit(a.c.out, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    WriteScanCsv(cells, os, certificate);
    Emit(a.c.out, os.str());
  }
}

ScanConfig MakeScan(const ScanArgs& a, Manifest& m) {
  SeedChoice seed = Seed(a.c);
  m.SetSeed(seed);
  ScanConfig cfg;
  cfg.l = a.l;
  cfg.betas = ParseGrid(a.betas, "--beta");
  cfg.ns = ParseIntList(a.ns, "--n");
  cfg.samples = a.samples;
  cfg.seed = seed.seed;
  cfg.workers = a.c.workers;
  cfg.max_decisions = a.max_decisions;
  m.config() = {{"l", a.l},           {"beta", a.betas},
                {"n", a.ns},          {"samples", a.samples},
                {"max_decisions", a.max_decisions}};
  return cfg;
}

void RunSatScan(const ScanArgs& a) {
  Manifest m("sat-scan");
  ScanConfig cfg = MakeScan(a, m);
  EmitScan(a, SatScan(cfg), false);
  m.Write(a.c.out);
}

void RunCertScan(const ScanArgs& a) {
  Manifest m("cert-scan");
  ScanConfig cfg = MakeScan(a, m);
  Formula phi = a.formula.empty() ? CertificateSentence(a.l)
                                  : Formula::Parse(a.formula, CnfVocabulary(a.l));
  m.config()["formula"] = phi.ToString();
  m.config()["with_dpll"] = a.with_dpll;
  m.config()["budget"] = a.budget;
  EmitScan(a, CertificateScan(phi, cfg, a.with_dpll, a.budget), true);
  m.Write(a.c.out);
}

int Main(int argc, char** argv) {
  CLI::App app{"Sparse random relational structures: sampling, types, limits, Monte Carlo"};
  app.set_version_flag("--version", SPARSELIMIT_VERSION);
  app.require_subcommand(1, 1);
  std::map<CLI::App*, std::function<void()>> runners;

  auto samples_opt = [](CLI::App* s, int& v) {
    s->add_option("--samples", v, "Number of samples")
        ->required()
        ->check(CLI::Range(1, std::numeric_limits<int>::max()));
  };

  SampleArgs sa;
  {
    auto* s = app.add_subcommand("sample", "Draw one random structure");
    s->add_option("--vocab", sa.vocab, "Preset name or vocabulary JSON")->required();
    s->add_option("--n", sa.n, "Number of vertices")->required()->check(CLI::PositiveNumber);
    s->add_option("--beta", sa.beta, "Densities: 1.5 or R=val[,R=val...]")->required();
    s->add_flag("--p", sa.explicit_p, "Treat --beta values as edge probabilities p");
    AddOut(s, sa.c);
    AddRandom(s, sa.c);
    s->get_option("--format")->description("Output format (csv means the text format)");
    runners[s] = [&] { RunSample(sa); };
  }
  CheckArgs ca;
  {
    auto* s = app.add_subcommand("check", "Model check a sentence on a structure file");
    s->add_option("--vocab", ca.vocab, "Preset name or vocabulary JSON")->required();
    s->add_option("--structure", ca.structure, "Structure file")->required();
    s->add_option("--formula", ca.formula, "First-order sentence")->required();
    s->add_option("--budget", ca.budget, "Evaluation step budget (0: unlimited)");
    AddOut(s, ca.c);
    runners[s] = [&] { RunCheck(ca); };
  }
  TreeTypesArgs ta;
  {
    auto* s = app.add_subcommand("tree-types", "List the rooted tree types up to a radius");
    s->add_option("--vocab", ta.vocab, "Preset name or vocabulary JSON")->required();
    s->add_option("--k", ta.k, "Rank k")->required()->check(CLI::NonNegativeNumber);
    s->add_option("--r", ta.r, "Radius r")->required()->check(CLI::NonNegativeNumber);
    s->add_option("--cap", ta.cap, "Maximum number of types")->check(CLI::PositiveNumber);
    AddOut(s, ta.c);
    runners[s] = [&] { RunTreeTypes(ta); };
  }
  LimitArgs la;
  {
    auto* s = app.add_subcommand("limit", "Symbolic limit probability of a sentence");
    s->add_option("--vocab", la.vocab, "Preset name or vocabulary JSON")->required();
    s->add_option("--formula", la.formula, "First-order sentence")->required();
    s->add_option("--override-r", la.override_r, "Radius to use instead of (3^k-1)/2")
        ->check(CLI::NonNegativeNumber);
    s->add_option("--beta-grid", la.grid, "a:b:step or a comma list (uniform beta)");
    s->add_option("--terms-out", la.terms_out, "Write the per-term table (CSV) here");
    AddOut(s, la.c);
    runners[s] = [&] { RunLimit(la); };
  }
  McArgs ma;
  {
    auto* s = app.add_subcommand("mc", "Monte Carlo estimates against the predictions");
    s->add_option("--vocab", ma.vocab, "Preset name or vocabulary JSON")->required();
    s->add_option("--stat", ma.stat, "Statistic")
        ->required()
        ->check(CLI::IsMember(
            {"tree-type-dist", "cycle-counts", "simple-fraction", "rich-fraction", "sentence"}));
    s->add_option("--beta", ma.beta, "Densities: 1.5 or R=val[,R=val...]")->required();
    s->add_option("--n", ma.ns, "Vertex counts (comma list)")->required();
    samples_opt(s, ma.samples);
    s->add_option("--k", ma.k, "Rank k")->check(CLI::NonNegativeNumber);
    s->add_option("--r", ma.r, "Radius r")->check(CLI::NonNegativeNumber);
    s->add_option("--root", ma.root, "Root vertex for tree-type-dist")
        ->check(CLI::PositiveNumber);
    s->add_flag("--classes", ma.classes, "cycle-counts: add per-class rows");
    s->add_option("--edge-cap", ma.edge_cap, "cycle-counts: maximum component edges");
    s->add_option("--formula", ma.formula, "sentence: first-order sentence");
    s->add_flag("--with-limit", ma.with_limit, "sentence: compare with the symbolic limit");
    s->add_option("--override-r", ma.override_r, "sentence: radius for --with-limit")
        ->check(CLI::NonNegativeNumber);
    s->add_option("--budget", ma.budget, "sentence: evaluation step budget per sample");
    AddOut(s, ma.c);
    AddRandom(s, ma.c);
    runners[s] = [&] { RunMc(ma); };
  }
  ScanArgs ss, cs;
  for (auto* args : {&ss, &cs}) {
    bool cert = args == &cs;
    auto* s = cert ? app.add_subcommand("cert-scan", "Frequency of a certificate sentence")
                   : app.add_subcommand("sat-scan", "Satisfiability of random l-CNF (DPLL)");
    s->add_option("--l", args->l, "Clause width")->check(CLI::Range(2, 8));
    s->add_option("--beta", args->betas, "a:b:step or a comma list")->required();
    s->add_option("--n", args->ns, "Variable counts (comma list)")->required();
    samples_opt(s, args->samples);
    s->add_option("--max-decisions", args->max_decisions, "DPLL decision budget (0: none)");
    if (cert) {
      s->add_option("--formula", args->formula, "Sentence (default: the unsat certificate)");
      s->add_flag("--with-dpll", args->with_dpll, "Also report the DPLL unsat fraction");
      s->add_option("--budget", args->budget, "Evaluation step budget per sample");
    }
    AddOut(s, args->c);
    AddRandom(s, args->c);
    runners[s] = cert ? std::function<void()>([&] { RunCertScan(cs); })
                      : std::function<void()>([&] { RunSatScan(ss); });
  }

  auto schema = [&]() -> std::string {
    for (auto* s : app.get_subcommands()) return s->help();
    return app.help();
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "usage error: " << e.what() << "\n\n" << schema();
    return 2;
  }
  try {
    runners.at(app.get_subcommands().front())();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << schema();
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace sparselimit::cli

int main(int argc, char** argv) { return sparselimit::cli::Main(argc, argv); }
