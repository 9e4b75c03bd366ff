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

#ifndef OTAFL_TRAINING_HPP_
#define OTAFL_TRAINING_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "otafl/aggregation.hpp"
#include "otafl/channel.hpp"
#include "otafl/dataset.hpp"
#include "otafl/logistic.hpp"
#include "otafl/objective.hpp"
#include "otafl/random.hpp"
#include "otafl/selection.hpp"

namespace otafl {

// Devices, their data and radio environment for one training run.
struct Federation {
  std::vector<Dataset> local_data;        // one shard per device
  Dataset test_data;
  std::vector<double> path_loss_linear;   // per device, for fading redraws
  ChannelSet channels;                    // round-0 (or static) fading
  double power_limit = 1e-3;              // P0 [W]
  double noise_power = 1e-5;              // sigma_n^2 [W]

  std::size_t num_devices() const { return local_data.size(); }
  int num_classes() const { return test_data.num_classes; }
  std::size_t feature_dim() const { return test_data.feature_dim(); }

  std::vector<DeviceProfile> Profiles(const ChannelSet& set) const;
  AggregationParams Params() const;
  // Union of all local shards, in device order.
  Dataset Pooled() const;
};

struct TrainingConfig {
  double learning_rate = 0.05;
  std::size_t rounds = 100;
  std::size_t batch_size = 0;  // 0 = full local batch
  Method method = Method::kGsds;
  RoundMode round_mode = RoundMode::kStatic;
  ScaSettings sca;
  AdsbfSettings adsbf;
};

struct RoundMetrics {
  std::size_t round = 0;
  double test_loss = 0.0;
  double test_accuracy = 0.0;
  double d_value = 0.0;
  std::size_t num_selected = 0;
  double wall_ms = 0.0;  // selection + beamforming solve time this round
};

using TrainingTrace = std::vector<RoundMetrics>;

// Failure inside a communication round; the original exception is nested.
class RoundError : public std::runtime_error {
 public:
  RoundError(std::size_t round, const std::string& what)
      : std::runtime_error("round " + std::to_string(round) + ": " + what),
        round_(round) {}
  std::size_t round() const { return round_; }

 private:
  std::size_t round_;
};

// Runs communication rounds on one federation: device selection and
// beamforming (solved once in static mode, every round in per-round mode),
// local gradients at the selected devices, over-the-air aggregation and
// the global update w <- w - lr / (sum_selected K_m) Re[r_hat].
class Trainer {
 public:
  Trainer(const Federation& federation, TrainingConfig config,
          RngStreams streams);

  // Errors from selection or the solvers are rethrown with the round index.
  RoundMetrics RunRound();
  TrainingTrace Run();

  const SoftmaxModel& model() const { return model_; }
  SoftmaxModel& model() { return model_; }
  std::size_t round() const { return round_; }
  // Selection in force for the most recent round.
  const std::optional<SelectionOutcome>& last_selection() const {
    return selection_;
  }

  // Called once per round after aggregation, before the model update.
  using Observer = std::function<void(std::size_t round,
                                      const SelectionOutcome& selection,
                                      const AggregateResult& aggregate)>;
  void set_observer(Observer observer) { observer_ = std::move(observer); }

 private:
  const Federation& federation_;
  TrainingConfig config_;
  RngStreams streams_;
  SoftmaxModel model_;
  std::size_t round_ = 0;
  std::optional<SelectionOutcome> selection_;
  Observer observer_;
};

}  // namespace otafl

#endif  // OTAFL_TRAINING_HPP_
