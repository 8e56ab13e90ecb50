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


#include "run_cli.hpp"

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "artifacts.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace bookprosody::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audiobook prosody extraction, prediction and SSML generation", "bookprosody"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> subset;
  app.add_option("--config", config_path, "JSON pipeline config")->required();
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--jobs", jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--subset", subset, "evaluation subset")
      ->check(CLI::IsMember({"all", "dialogue"}));
  app.fallthrough();

  const std::map<std::string, std::pair<std::string, std::function<int(RunContext&)>>> commands{
      {"extract", {"pitch, volume and rate per segment", cmd_extract}},
      {"featurize", {"book split and feature matrices", cmd_featurize}},
      {"train", {"fit the configured model", cmd_train}},
      {"predict", {"predict prosody for the test books", cmd_predict}},
      {"evaluate", {"MSE and correlation report", cmd_evaluate}},
      {"emit-ssml", {"SSML documents for the test books", cmd_emit_ssml}},
      {"analyze-readers", {"character, gender and quote statistics", cmd_analyze_readers}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  const std::string name = app.get_subcommands().front()->get_name();

  Logger log(err, name);
  try {
    auto config = load_config(config_path);
    if (seed) config.seed = *seed;
    if (jobs) config.jobs = *jobs;
    if (subset) config.eval.subset = *subset;
    validate(config);
    write_json(ArtifactLayout{config.output_dir}.effective_config(), to_json(config));
    RunContext ctx{config, out, log};
    return commands.at(name).second(ctx);
  } catch (const ConfigError& e) {
    log.error(std::string("invalid configuration: ") + e.what());
    return kExitConfig;
  } catch (const MissingArtifact& e) {
    log.error(e.what());
    return kExitMissingArtifact;
  } catch (const std::exception& e) {
    log.error(e.what());
    return kExitFailure;
  }
}

}  // namespace bookprosody::cli
