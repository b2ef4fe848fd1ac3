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

#include "sparselimit/errors.hpp"

namespace sparselimit {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kNonGroup: return "NonGroup";
    case ErrorKind::kBadPair: return "BadPair";
    case ErrorKind::kArityMismatch: return "ArityMismatch";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kUnknownVertex: return "UnknownVertex";
    case ErrorKind::kNotConnected: return "NotConnected";
    case ErrorKind::kTooLargeForSaturation: return "TooLargeForSaturation";
    case ErrorKind::kUnreachable: return "Unreachable";
    case ErrorKind::kOverflow: return "Overflow";
    case ErrorKind::kSyntax: return "SyntaxError";
    case ErrorKind::kUnknownRelation: return "UnknownRelation";
    case ErrorKind::kArity: return "ArityError";
    case ErrorKind::kUnboundVariable: return "UnboundVariable";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kNotATree: return "NotATree";
    case ErrorKind::kCapExceeded: return "CapExceeded";
    case ErrorKind::kRegistryMissing: return "RegistryMissing";
    case ErrorKind::kPartialRegistry: return "PartialRegistry";
    case ErrorKind::kNonPositiveBeta: return "NonPositiveBeta";
    case ErrorKind::kFamily: return "FamilyError";
    case ErrorKind::kRichnessCheckFailed: return "RichnessCheckFailed";
    case ErrorKind::kBadRelation: return "BadRelation";
    case ErrorKind::kIo: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorKind::kSyntax,
            "at offset " + std::to_string(position) + ": " + message),
      position_(position) {}

}  // namespace sparselimit
