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


#ifndef SPARSELIMIT_TOOLS_CLI_SUPPORT_HPP_
#define SPARSELIMIT_TOOLS_CLI_SUPPORT_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparselimit/vocabulary.hpp"

namespace sparselimit::cli {

// Bad flag values found after parsing; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "a:b:step" (inclusive) or "x,y,z".
std::vector<double> ParseGrid(const std::string& text, const std::string& flag);
std::vector<std::int64_t> ParseIntList(const std::string& text, const std::string& flag);

// Preset name, or a path to a vocabulary JSON file.
VocabularyPtr ResolveVocabulary(const std::string& name);

struct SeedChoice {
  std::uint64_t seed = 0;
  // "flag", "env" or "generated".
  std::string source;
};
// --seed, else SPARSELIMIT_SEED, else a fresh random seed.
SeedChoice ChooseSeed(const std::optional<std::uint64_t>& flag);

int DefaultWorkers();

class Manifest {
 public:
  explicit Manifest(std::string subcommand);
  nlohmann::json& config() { return config_; }
  void SetSeed(const SeedChoice& s);
  void Set(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }
  // Next to out_path (as out_path + ".manifest.json"), or on stderr.
  void Write(const std::string& out_path) const;

 private:
  std::string subcommand_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json extra_ = nlohmann::json::object();
  std::chrono::steady_clock::time_point start_;
};

// Writes text to path, or to stdout when path is empty or "-".
void Emit(const std::string& path, const std::string& text);

}  // namespace sparselimit::cli

#endif  // SPARSELIMIT_TOOLS_CLI_SUPPORT_HPP_
