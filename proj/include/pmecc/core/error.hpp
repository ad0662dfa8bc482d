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

#pragma once

#include <stdexcept>
#include <string>

namespace pmecc {

// Error categories. The C API maps each one onto a status code.
enum class ErrorKind {
  kInvalidArgument,
  kDimensionMismatch,
  kBasePointMismatch,
  kFamilyRange,
  kDomain,
  kSearchExhausted,
  kConstructionInvalid,
  kInternalInconsistency,
  kAssemblyInfeasible,
  kProfileConstruction,
  kResolutionTooSmall,
  kStability,
  kOriginOutsideSupport,
  kParse,
  kIo,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by step() when dt exceeds the stability bound; carries the admissible step.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& message, double admissible_dt)
      : Error(ErrorKind::kStability, message), admissible_dt_(admissible_dt) {}

  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

}  // namespace pmecc
