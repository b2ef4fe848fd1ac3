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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sparselimit/vocabulary.hpp"

namespace sparselimit {
namespace {

using nlohmann::json;

Permutation ReadPermutation(const json& j, int arity) {
  if (!j.is_array()) throw Error(ErrorKind::kIo, "permutation must be an array");
  Permutation p;
  for (const auto& x : j) {
    int v = x.get<int>();
    if (v < 1 || v > arity) throw Error(ErrorKind::kNonGroup, "permutation image out of range");
    p.push_back(v - 1);
  }
  if (static_cast<int>(p.size()) != arity) {
    throw Error(ErrorKind::kArityMismatch, "permutation length differs from arity");
  }
  return p;
}

Relation ReadRelation(const json& j) {
  Relation r;
  r.name = j.at("name").get<std::string>();
  r.arity = j.at("arity").get<int>();
  if (r.arity < 1 || r.arity > kMaxArity) {
    throw Error(ErrorKind::kInvalidArgument, "relation '" + r.name + "' has unsupported arity");
  }
  if (j.contains("elements")) {
    std::vector<Permutation> elems;
    for (const auto& e : j.at("elements")) elems.push_back(ReadPermutation(e, r.arity));
    r.group = SymmetryGroup::FromElements(r.arity, std::move(elems));
  } else {
    std::vector<Permutation> gens;
    if (j.contains("generators")) {
      for (const auto& g : j.at("generators")) gens.push_back(ReadPermutation(g, r.arity));
    }
    r.group = SymmetryGroup::Generated(r.arity, gens);
  }
  if (j.contains("antireflexive_pairs")) {
    for (const auto& p : j.at("antireflexive_pairs")) {
      if (!p.is_array() || p.size() != 2) {
        throw Error(ErrorKind::kBadPair, "anti-reflexive pair must have two entries");
      }
      r.antireflexive.push_back({p[0].get<int>() - 1, p[1].get<int>() - 1});
    }
  }
  return r;
}

}  // namespace

VocabularyPtr ParseVocabularyJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("invalid vocabulary JSON: ") + e.what());
  }
  try {
    std::vector<Relation> rels;
    std::string name;
    if (j.contains("relations")) {
      name = j.value("name", std::string("custom"));
      for (const auto& r : j.at("relations")) rels.push_back(ReadRelation(r));
    } else {
      rels.push_back(ReadRelation(j));
      name = rels.back().name;
    }
    return std::make_shared<Vocabulary>(std::move(name), std::move(rels));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("malformed vocabulary: ") + e.what());
  }
}

VocabularyPtr LoadVocabularyJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open vocabulary file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseVocabularyJson(ss.str());
}

std::string VocabularyToJson(const Vocabulary& vocab) {
  json out;
  out["name"] = vocab.name();
  out["relations"] = json::array();
  for (const auto& r : vocab.relations()) {
    json jr;
    jr["name"] = r.name;
    jr["arity"] = r.arity;
    json elems = json::array();
    for (const auto& p : r.group.elements()) {
      json jp = json::array();
      for (int x : p) jp.push_back(x + 1);
      elems.push_back(jp);
    }
    jr["generators"] = elems;
    json pairs = json::array();
    for (const auto& p : r.antireflexive) pairs.push_back({p.first + 1, p.second + 1});
    jr["antireflexive_pairs"] = pairs;
    out["relations"].push_back(jr);
  }
  return out.dump(2);
}

VocabularyPtr ResolveVocabulary(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path) && !std::filesystem::is_directory(name_or_path)) {
    auto v = LoadVocabularyJson(name_or_path);
    v->ValidateOrThrow();
    return v;
  }
  auto v = PresetVocabulary(name_or_path);
  v->ValidateOrThrow();
  return v;
}

}  // namespace sparselimit
