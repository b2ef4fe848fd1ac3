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


#include "sparselimit/structure_io.hpp"

#include <fstream>
#include <sstream>

namespace sparselimit {

void WriteStructure(std::ostream& out, const Hypergraph& h) {
  out << "vocabulary " << h.vocabulary().name() << '\n';
  out << "n " << h.num_vertices() << '\n';
  bool standard = true;
  for (int i = 0; i < h.num_vertices(); ++i) {
    if (h.VertexAt(i) != i + 1) standard = false;
  }
  if (!standard) {
    out << "vertices";
    for (Vertex v : h.vertices()) out << ' ' << v;
    out << '\n';
  }
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    out << h.vocabulary().relation(h.EdgeRelation(e)).name;
    for (Vertex v : h.EdgeTuple(e)) out << ' ' << v;
    out << '\n';
  }
}

std::string StructureToString(const Hypergraph& h) {
  std::ostringstream os;
  WriteStructure(os, h);
  return os.str();
}

Hypergraph ReadStructure(std::istream& in, VocabularyPtr vocab) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::kIo, "structure line " + std::to_string(line_no) + ": " + msg);
  };
  std::string vocab_name;
  long long n = -1;
  bool have_vertices = false;
  std::unique_ptr<Hypergraph::Builder> builder;
  auto ensure_builder = [&]() {
    if (builder) return;
    if (vocab_name.empty()) fail("missing 'vocabulary' header");
    if (!vocab) {
      vocab = PresetVocabulary(vocab_name);
    } else if (vocab->name() != vocab_name) {
      fail("structure uses vocabulary '" + vocab_name + "' but '" + vocab->name() +
           "' was requested");
    }
    builder = std::make_unique<Hypergraph::Builder>(vocab);
  };
  std::vector<Vertex> tuple;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "vocabulary") {
      if (!(ls >> vocab_name)) fail("missing vocabulary name");
    } else if (head == "n") {
      if (!(ls >> n) || n < 0) fail("bad vertex count");
    } else if (head == "vertices") {
      ensure_builder();
      long long v;
      long long count = 0;
      while (ls >> v) {
        builder->AddVertex(static_cast<Vertex>(v));
        ++count;
      }
      if (n >= 0 && count != n) fail("vertex list length differs from n");
      have_vertices = true;
    } else {
      ensure_builder();
      auto rel = vocab->Find(head);
      if (!rel) fail("unknown relation '" + head + "'");
      tuple.clear();
      long long v;
      while (ls >> v) tuple.push_back(static_cast<Vertex>(v));
      if (!ls.eof()) fail("bad vertex id");
      if (static_cast<int>(tuple.size()) != vocab->relation(*rel).arity) {
        fail("wrong number of vertices for '" + head + "'");
      }
      if (!builder->AddEdge(*rel, tuple)) fail("tuple violates anti-reflexivity");
    }
  }
  ensure_builder();
  if (!have_vertices && n > 0) builder->AddVertexRange(1, static_cast<Vertex>(n + 1));
  Hypergraph h = builder->Build();
  if (n >= 0 && h.num_vertices() != n) fail("edges mention vertices outside the declared set");
  return h;
}

Hypergraph StructureFromString(const std::string& text, VocabularyPtr vocab) {
  std::istringstream is(text);
  return ReadStructure(is, std::move(vocab));
}

Hypergraph LoadStructure(const std::string& path, VocabularyPtr vocab) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open structure file '" + path + "'");
  return ReadStructure(in, std::move(vocab));
}

void SaveStructure(const std::string& path, const Hypergraph& h) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  WriteStructure(out, h);
}

}  // namespace sparselimit
