// Copyright 2026 The Dynkin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNKIN_ERROR_HPP
#define DYNKIN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dynkin {

/// Machine-readable error categories. The CLI maps them onto exit codes.
enum class ErrorCode {
  kMalformed,       // structurally broken input (ragged tables, bad literals)
  kInvalid,         // well-formed but violates a contract (owner mismatch, ...)
  kValidation,      // an instance check failed where a valid instance is needed
  kInfeasibleSize,  // enumeration cap exceeded
  kInternal,        // an asserted identity failed; indicates a library bug
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kInvalid: return "invalid";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kInfeasibleSize: return "infeasible_size";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

class DynkinError : public std::runtime_error {
 public:
  DynkinError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dynkin

#endif  // DYNKIN_ERROR_HPP
