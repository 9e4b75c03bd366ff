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

#ifndef OTAFL_CONFIG_HPP_
#define OTAFL_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "otafl/channel.hpp"
#include "otafl/selection.hpp"

namespace otafl {

enum class DatasetKind { kSynthetic, kIdx };

struct ExperimentConfig {
  std::string profile = "paper";  // "paper" or "desk"
  std::size_t num_devices = 200;  // M
  std::size_t num_antennas = 16;  // N
  double p0_dbm = 0.0;
  double noise_dbm = -20.0;
  double r_min_m = 10.0;
  double r_max_m = 100.0;
  std::vector<Method> methods = {Method::kGsds, Method::kAdsbf,
                                 Method::kSelectAll, Method::kTopOne};
  std::size_t rounds = 100;  // T
  double learning_rate = 0.05;
  std::size_t batch_size = 0;  // 0 = full batch
  std::vector<std::uint64_t> seeds = {1};
  RoundMode round_mode = RoundMode::kStatic;

  DatasetKind dataset = DatasetKind::kSynthetic;
  std::size_t samples_per_device = 270;  // K_m
  std::size_t test_samples = 1000;
  int num_classes = 10;
  std::size_t feature_dim = 20;
  double class_separation = 1.0;
  std::string idx_train_images;
  std::string idx_train_labels;
  std::string idx_test_images;
  std::string idx_test_labels;

  std::size_t sca_max_iters = 50;
  double sca_tol = 1e-6;
  std::size_t sca_restarts = 3;
  double adsbf_eps = 1e-6;
  std::size_t adsbf_max_iters = 10;

  std::string output = "results";
  std::size_t workers = 1;
  bool wall_clock = false;  // true records solver time; CSVs then differ per run

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;

  double power_limit_watts() const;
  double noise_power_watts() const;
  // Throws ConfigError naming the first violated constraint.
  void Validate() const;
};

// Parses `key = value` lines with `#` comments. A `profile` line is applied
// before every other key regardless of its position, so explicit keys
// override profile defaults. Throws ConfigError naming key and line.
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Emits every key explicitly; ParseConfig(SerializeConfig(c)) == c.
std::string SerializeConfig(const ExperimentConfig& config);

// Comma-separated helpers shared with the command line.
std::vector<std::uint64_t> ParseSeedList(std::string_view text);
std::vector<Method> ParseMethodList(std::string_view text);

}  // namespace otafl

#endif  // OTAFL_CONFIG_HPP_
