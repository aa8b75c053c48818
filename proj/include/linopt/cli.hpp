// Copyright 2026 The linopt Authors
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

#ifndef LINOPT_CLI_HPP_
#define LINOPT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace linopt::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,      // unreadable, malformed or invalid input
  kCheckFailed = 3,     // a structural check (completeness, rank, bound) failed
};

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linopt::cli

#endif  // LINOPT_CLI_HPP_
