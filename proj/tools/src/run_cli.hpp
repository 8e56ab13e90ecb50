// Copyright (c) 2026 The bookprosody Authors
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


#ifndef BOOKPROSODY_TOOLS_RUN_CLI_HPP_
#define BOOKPROSODY_TOOLS_RUN_CLI_HPP_

#include <iosfwd>

namespace bookprosody::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitMissingArtifact = 3;

/// Parses arguments, runs one subcommand and maps errors to exit codes.
/// Summaries go to `out`, logs and errors to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bookprosody::cli

#endif  // BOOKPROSODY_TOOLS_RUN_CLI_HPP_
