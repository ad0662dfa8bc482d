// Copyright 2026 The pmecc Authors
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

#include "pmecc/core/error.hpp"

namespace pmecc {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kBasePointMismatch: return "base-point-mismatch";
    case ErrorKind::kFamilyRange: return "family-range";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kSearchExhausted: return "search-exhausted";
    case ErrorKind::kConstructionInvalid: return "construction-invalid";
    case ErrorKind::kInternalInconsistency: return "internal-inconsistency";
    case ErrorKind::kAssemblyInfeasible: return "assembly-infeasible";
    case ErrorKind::kProfileConstruction: return "profile-construction";
    case ErrorKind::kResolutionTooSmall: return "resolution-too-small";
    case ErrorKind::kStability: return "stability";
    case ErrorKind::kOriginOutsideSupport: return "origin-outside-support";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace pmecc
