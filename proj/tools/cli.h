// Copyright 2026 The nsgc Authors.
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

// Command-line front end. The whole surface lives behind run_cli so tests can
// drive it in-process.

#ifndef NSGC_TOOLS_CLI_H_
#define NSGC_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace nsgc::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // library or I/O error
inline constexpr int kExitUsage = 2;    // bad command line

// `args` excludes the program name. Results go to files named on the command
// line; `out` receives help text and progress, `err` the single machine-readable
// line
//
//   error code=<ErrorCodeName> message="<text>"
//
// on failure. No output file is created or replaced when a command fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsgc::cli

#endif  // NSGC_TOOLS_CLI_H_
