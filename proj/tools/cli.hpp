// Copyright 2026 The gtgd Authors.
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

#ifndef GTGD_TOOLS_CLI_HPP_
#define GTGD_TOOLS_CLI_HPP_

#include <ostream>

namespace gtgd::cli {

enum ExitCode : int {
  kYes = 0,
  kNo = 1,
  kUnknown = 2,
  kUsage = 64,
  kDataError = 65,
};

// Runs one command line; output is written to out and diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gtgd::cli

#endif  // GTGD_TOOLS_CLI_HPP_
