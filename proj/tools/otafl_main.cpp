// Copyright 2026 The Authors.
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

// Experiment runner for over-the-air federated learning.
//
//   otafl run --config exp.conf [--out DIR] [--seeds 1,2,3] [--method gsds]
//   otafl defaults [--profile desk]

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "otafl/config.hpp"
#include "otafl/experiment.hpp"

namespace {

void PrintNested(const std::exception& e, int depth = 0) {
  std::cerr << std::string(static_cast<std::size_t>(depth) * 2, ' ')
            << "error: " << e.what() << '\n';
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    PrintNested(inner, depth + 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Over-the-air federated learning experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir, seeds, method;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("--config", config_path, "key = value config file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides 'output')");
  run->add_option("--seeds", seeds, "Comma-separated seeds (overrides 'seeds')");
  run->add_option("--method", method,
                  "gsds, adsbf, select_all, top_one, a comma list or 'all'");

  std::string profile = "paper";
  auto* defaults = app.add_subcommand("defaults", "Print the default config");
  defaults->add_option("--profile", profile, "paper or desk")
      ->check(CLI::IsMember({"paper", "desk"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*defaults) {
      std::cout << otafl::SerializeConfig(
          otafl::ParseConfig("profile = " + profile));
      return 0;
    }
    otafl::ExperimentConfig config = otafl::LoadConfig(config_path);
    if (!seeds.empty()) config.seeds = otafl::ParseSeedList(seeds);
    if (!method.empty()) config.methods = otafl::ParseMethodList(method);
    if (!out_dir.empty()) config.output = out_dir;
    config.Validate();

    const auto result = otafl::RunExperiment(config, config.output);
    for (const auto& r : result.runs) std::cout << r.csv_path.string() << '\n';
    std::cout << result.summary_path.string() << '\n';
  } catch (const std::exception& e) {
    PrintNested(e);
    return 1;
  }
  return 0;
}
