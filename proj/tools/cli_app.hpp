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


// Command-line front end. `run` takes the arguments without the program
// name and returns the process exit status.

#ifndef DYNKIN_TOOLS_CLI_APP_HPP
#define DYNKIN_TOOLS_CLI_APP_HPP

#include <ostream>
#include <string>
#include <vector>

#include "dynkin/error.hpp"

namespace dynkin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitInternal = 4;

int exit_code(ErrorCode code);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynkin::cli

#endif  // DYNKIN_TOOLS_CLI_APP_HPP
