/*
 * Copyright 2026 The elecxai Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line entry point.
//
//   elecxai run --synthetic --seed 7 --out out/
//   elecxai run --config run.json --stage train
//   elecxai explain --config run.json

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "elecxai/pipeline.hpp"

namespace {

namespace pl = elecxai::pipeline;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string stage;
  bool synthetic = false;
  int threads = -1;
};

void AddOptions(CLI::App* cmd, Options& o, bool with_stage) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--seed", o.seed, "Run seed (overrides the config)");
  cmd->add_option("--out", o.out, "Output directory (overrides the config)");
  if (with_stage) {
    cmd->add_option("--stage", o.stage, "Run a single stage")
        ->check(CLI::IsMember({"synth", "geo", "features", "train", "explain", "report"}));
  }
  cmd->add_flag("--synthetic", o.synthetic, "Generate a synthetic world instead of reading files");
  cmd->add_option("--threads", o.threads, "Worker threads for explanations (0: all cores)");
}

int Execute(const Options& o, std::optional<pl::Stage> stage) {
  try {
    pl::RunConfig config = o.config.empty() ? pl::RunConfig{} : pl::LoadConfig(o.config);
    if (o.synthetic) config.mode = pl::InputMode::kSynthetic;
    if (o.seed) config.seed = *o.seed;
    if (!o.out.empty()) config.output_dir = o.out;
    if (o.threads >= 0) config.threads = o.threads;
    pl::Pipeline pipeline(std::move(config));
    if (stage) {
      pipeline.Run(*stage);
    } else {
      pipeline.RunAll();
    }
  } catch (const pl::MissingInputError& e) {
    std::cerr << "elecxai: " << e.what() << "\n";
    return 2;
  } catch (const pl::StageError& e) {
    std::cerr << "elecxai: " << e.what() << "\n";
    return 1;
  } catch (const elecxai::InvalidArgument& e) {
    std::cerr << "elecxai: invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "elecxai: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electrification estimation from network features with local explanations"};
  app.require_subcommand(1);

  Options run_options;
  auto* run = app.add_subcommand("run", "Run the whole pipeline or one --stage");
  AddOptions(run, run_options, true);

  Options stage_options;
  std::vector<std::pair<CLI::App*, pl::Stage>> stage_commands;
  for (pl::Stage s : pl::kAllStages) {
    auto* cmd = app.add_subcommand(std::string(pl::StageName(s)),
                                   "Run the " + std::string(pl::StageName(s)) + " stage");
    AddOptions(cmd, stage_options, false);
    stage_commands.emplace_back(cmd, s);
  }

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    std::optional<pl::Stage> stage;
    if (!run_options.stage.empty()) stage = pl::ParseStage(run_options.stage);
    return Execute(run_options, stage);
  }
  for (const auto& [cmd, s] : stage_commands) {
    if (cmd->parsed()) return Execute(stage_options, s);
  }
  return 2;
}
