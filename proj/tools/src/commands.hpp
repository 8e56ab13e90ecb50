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


#ifndef BOOKPROSODY_TOOLS_COMMANDS_HPP_
#define BOOKPROSODY_TOOLS_COMMANDS_HPP_

#include <iosfwd>
#include <mutex>
#include <string>

#include "config.hpp"

namespace bookprosody::cli {

/// Serialised progress messages on the error stream.
class Logger {
 public:
  Logger(std::ostream& err, std::string command);
  void info(const std::string& message);
  void warn(const std::string& message);
  void error(const std::string& message);

 private:
  std::ostream& err_;
  std::string command_;
  std::mutex mutex_;
};

struct RunContext {
  PipelineConfig config;
  std::ostream& out;
  Logger& log;
};

// Each returns the process exit code and prints a JSON summary to `out`.
int cmd_extract(RunContext& ctx);
int cmd_featurize(RunContext& ctx);
int cmd_train(RunContext& ctx);
int cmd_predict(RunContext& ctx);
int cmd_evaluate(RunContext& ctx);
int cmd_emit_ssml(RunContext& ctx);
int cmd_analyze_readers(RunContext& ctx);

}  // namespace bookprosody::cli

#endif  // BOOKPROSODY_TOOLS_COMMANDS_HPP_
