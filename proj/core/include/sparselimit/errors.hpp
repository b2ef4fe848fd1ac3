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

#ifndef SPARSELIMIT_ERRORS_HPP_
#define SPARSELIMIT_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparselimit {

enum class ErrorKind {
  kInvalidArgument,
  kNonGroup,
  kBadPair,
  kArityMismatch,
  kLengthMismatch,
  kUnknownVertex,
  kNotConnected,
  kTooLargeForSaturation,
  kUnreachable,
  kOverflow,
  kSyntax,
  kUnknownRelation,
  kArity,
  kUnboundVariable,
  kBudgetExceeded,
  kNotATree,
  kCapExceeded,
  kRegistryMissing,
  kPartialRegistry,
  kNonPositiveBeta,
  kFamily,
  kRichnessCheckFailed,
  kBadRelation,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

// All domain failures surface as this exception; `kind()` identifies which
// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures carry the byte offset into the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace sparselimit

#endif  // SPARSELIMIT_ERRORS_HPP_
