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

#ifndef OTAFL_EXPERIMENT_HPP_
#define OTAFL_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "otafl/config.hpp"
#include "otafl/training.hpp"

namespace otafl {

// Builds the devices, data and channels for one seed. Everything drawn
// here comes from method-independent streams, so all methods of a seed see
// identical channels, data and receiver noise.
Federation BuildFederation(const ExperimentConfig& config,
                           std::uint64_t seed);

TrainingConfig MakeTrainingConfig(const ExperimentConfig& config,
                                  Method method);

struct RunRecord {
  Method method = Method::kGsds;
  std::uint64_t seed = 0;
  TrainingTrace trace;
  std::filesystem::path csv_path;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;  // method-major, then seed, config order
  std::filesystem::path summary_path;
};

std::string CsvFileName(Method method, std::uint64_t seed);

// Writes round,test_loss,test_accuracy,d_value,num_selected,wall_ms.
std::string FormatCsv(const TrainingTrace& trace, bool wall_clock);

// Runs every method x seed pair on a pool of config.workers threads and
// writes one CSV per pair plus summary.json into `out_dir`. Each CSV is
// flushed as soon as its run finishes. Errors are rethrown with method
// and seed context after the remaining runs complete.
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const std::filesystem::path& out_dir);

// Mean and 95% Student-t half-width. half_width = 0 for fewer than 2 values.
struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;
};
MeanCi MeanWithCi(const std::vector<double>& values);

}  // namespace otafl

#endif  // OTAFL_EXPERIMENT_HPP_
