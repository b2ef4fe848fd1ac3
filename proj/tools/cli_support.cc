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


#include "cli_support.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "sparselimit/errors.hpp"

namespace sparselimit::cli {

namespace {

double ParseNumber(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": not a number: '" + s + "'");
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

}  // namespace

std::vector<double> ParseGrid(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  auto parts = Split(text, ':');
  if (parts.size() == 3) {
    double a = ParseNumber(parts[0], flag), b = ParseNumber(parts[1], flag);
    double step = ParseNumber(parts[2], flag);
    if (step <= 0 || b < a) throw UsageError(flag + ": expected a:b:step with a <= b, step > 0");
    long count = std::lround(std::floor((b - a) / step + 1e-9));
    if (count > 100000) throw UsageError(flag + ": grid too large");
    for (long i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  if (parts.size() != 1) throw UsageError(flag + ": expected a:b:step or a comma list");
  for (const auto& p : Split(text, ',')) out.push_back(ParseNumber(p, flag));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

std::vector<std::int64_t> ParseIntList(const std::string& text, const std::string& flag) {
  std::vector<std::int64_t> out;
  for (const auto& p : Split(text, ',')) {
    double v = ParseNumber(p, flag);
    if (v < 1 || v != std::floor(v) || v > 9e15) {
      throw UsageError(flag + ": expected positive integers, got '" + p + "'");
    }
    out.push_back(static_cast<std::int64_t>(v));
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

VocabularyPtr ResolveVocabulary(const std::string& name) {
  if (std::filesystem::is_regular_file(name)) return LoadVocabularyJson(name);
  return PresetVocabulary(name);
}

SeedChoice ChooseSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return {*flag, "flag"};
  if (const char* env = std::getenv("SPARSELIMIT_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      std::uint64_t s = std::stoull(env, &used);
      if (used == std::string(env).size()) return {s, "env"};
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("SPARSELIMIT_SEED: not an unsigned integer: '") + env + "'");
  }
  std::random_device rd;
  std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  return {s, "generated"};
}

int DefaultWorkers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Manifest::Manifest(std::string subcommand)
    : subcommand_(std::move(subcommand)), start_(std::chrono::steady_clock::now()) {}

void Manifest::SetSeed(const SeedChoice& s) {
  extra_["seed"] = s.seed;
  extra_["seed_source"] = s.source;
}

void Manifest::Write(const std::string& out_path) const {
  nlohmann::json m = extra_;
  m["subcommand"] = subcommand_;
  m["config"] = config_;
  m["tool_version"] = SPARSELIMIT_VERSION;
  m["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  std::string text = m.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cerr << text;
    return;
  }
  std::ofstream f(out_path + ".manifest.json");
  if (!f) throw Error(ErrorKind::kIo, "cannot write " + out_path + ".manifest.json");
  f << text;
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::kIo, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorKind::kIo, "write failed: " + path);
}

}  // namespace sparselimit::cli
