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


#ifndef SPARSELIMIT_STRUCTURE_IO_HPP_
#define SPARSELIMIT_STRUCTURE_IO_HPP_

#include <iosfwd>
#include <string>

#include "sparselimit/hypergraph.hpp"

namespace sparselimit {

// Line-oriented structure format:
//
//   vocabulary graph
//   n 4
//   vertices 1 2 3 7        (omitted when the vertex set is 1..n)
//   E 1 2
//   E 2 3
//
// Edges are written as relation name plus canonical tuple, sorted. Blank
// lines and lines starting with '#' are ignored on input.
void WriteStructure(std::ostream& out, const Hypergraph& h);
std::string StructureToString(const Hypergraph& h);

// When vocab is null the header's vocabulary name is resolved as a preset.
// Throws IoError on malformed input and VocabularyMismatch-style IoError when
// the header names a different vocabulary than the one given.
Hypergraph ReadStructure(std::istream& in, VocabularyPtr vocab = nullptr);
Hypergraph StructureFromString(const std::string& text, VocabularyPtr vocab = nullptr);
Hypergraph LoadStructure(const std::string& path, VocabularyPtr vocab = nullptr);
void SaveStructure(const std::string& path, const Hypergraph& h);

}  // namespace sparselimit

#endif  // SPARSELIMIT_STRUCTURE_IO_HPP_
