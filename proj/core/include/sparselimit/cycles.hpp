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


#ifndef SPARSELIMIT_CYCLES_HPP_
#define SPARSELIMIT_CYCLES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sparselimit/hypergraph.hpp"

namespace sparselimit {

// Colored cycles are handled through traversal words. A cycle with L >= 2
// edges is walked from an attachment vertex w_0 along e_0 to w_1 and so on
// back to w_0; each step records the color of w_i and the edge e_i as a
// letter: the relation plus a label per position (0 for w_i, 1 for
// w_{i+1}, 2.. for the edge's private vertices) least in its orbit, and
// the colors of the private vertices. A labeled colored cycle has exactly
// 2L * prod_i (a_i - 2)! traversal words, so
//   sum over classes of w/aut = (1/2L) * sum over words of w / prod (a_i-2)!.
// Loop cycles are single edges with one repeated vertex (ex = 0).

struct CycleLetter {
  int relation = 0;
  std::vector<int> labels;
};

// All letters of relations with arity >= 2. Letter vertices are distinct,
// so anti-reflexivity never excludes one.
std::vector<CycleLetter> CycleLetters(const Vocabulary& vocab);

struct CycleStep {
  int color = 0;
  int letter = 0;
  std::vector<int> extra_colors;
};

using CycleWord = std::vector<CycleStep>;

// The colored cycle spelled by a word: w_i is vertex i + 1, private
// vertices follow. Colors are indexed by vertex index.
struct ColoredCycle {
  Hypergraph cycle;
  std::vector<int> colors;
};

class CycleWords {
 public:
  explicit CycleWords(VocabularyPtr vocab);

  const Vocabulary& vocabulary() const { return *vocab_; }
  const std::vector<CycleLetter>& letters() const { return letters_; }
  int arity(int letter) const { return static_cast<int>(letters_[letter].labels.size()); }

  ColoredCycle Build(const CycleWord& word) const;

  // Canonical encoding of the word's cycle class and the number of
  // colored automorphisms.
  std::vector<int> CanonicalKey(const CycleWord& word, std::int64_t* aut = nullptr) const;
  // Same key for a concrete colored cycle (saturated unicycle, including
  // loop edges). Colors are indexed by vertex index.
  std::vector<int> KeyOf(const Hypergraph& cycle, const std::vector<int>& colors,
                         std::int64_t* aut = nullptr) const;

  // Loop cycles: the canonical colored loop key and automorphism count.
  std::vector<int> LoopKey(int relation, const std::vector<Vertex>& tuple,
                           const std::vector<int>& colors, std::int64_t* aut = nullptr) const;

  // Letter index of (relation, labels) after canonicalization, or -1.
  int FindLetter(int relation, const std::vector<int>& labels) const;

 private:
  std::vector<int> EncodeStep(const CycleStep& s, int* stabilizer) const;

  VocabularyPtr vocab_;
  std::vector<CycleLetter> letters_;
};

}  // namespace sparselimit

#endif  // SPARSELIMIT_CYCLES_HPP_
