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

#include "otafl/training.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <numeric>

#include "otafl/errors.hpp"

namespace otafl {

std::vector<DeviceProfile> Federation::Profiles(const ChannelSet& set) const {
  if (set.num_devices() != local_data.size()) {
    throw ParameterError("channel count differs from device count");
  }
  std::vector<DeviceProfile> out;
  out.reserve(local_data.size());
  for (std::size_t m = 0; m < local_data.size(); ++m) {
    out.push_back({m, static_cast<std::int64_t>(local_data[m].size()),
                   set.channels[m]});
  }
  return out;
}

AggregationParams Federation::Params() const {
  const auto profiles = Profiles(channels);
  return AggregationParams::For(profiles, power_limit, noise_power);
}

Dataset Federation::Pooled() const {
  Dataset out;
  out.num_classes = num_classes();
  std::size_t rows = 0;
  for (const auto& d : local_data) rows += d.size();
  out.features.resize(static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(feature_dim()));
  out.labels.reserve(rows);
  Eigen::Index at = 0;
  for (const auto& d : local_data) {
    out.features.middleRows(at, d.features.rows()) = d.features;
    out.labels.insert(out.labels.end(), d.labels.begin(), d.labels.end());
    at += d.features.rows();
  }
  return out;
}

Trainer::Trainer(const Federation& federation, TrainingConfig config,
                 RngStreams streams)
    : federation_(federation),
      config_(config),
      streams_(streams),
      model_(federation.num_classes(), federation.feature_dim()) {
  if (!(config_.learning_rate > 0.0)) {
    throw ParameterError("learning rate must be positive");
  }
  if (config_.rounds < 1) throw ParameterError("need at least one round");
  if (federation.num_devices() == 0) throw ParameterError("no devices");
  for (const auto& shard : federation.local_data) {
    if (shard.size() == 0) throw ParameterError("empty local dataset");
  }
}

RoundMetrics Trainer::RunRound() {
  const std::size_t t = round_;
  RoundMetrics metrics;
  metrics.round = t;
  try {
    ChannelSet redrawn;
    const ChannelSet* channels = &federation_.channels;
    if (config_.round_mode == RoundMode::kPerRound && t > 0) {
      Rng fading = streams_.Stream(StreamPurpose::kFading, t);
      redrawn = SampleChannelsFromLoss(federation_.path_loss_linear,
                                       federation_.channels.num_antennas(),
                                       fading, RoundMode::kPerRound);
      channels = &redrawn;
    }
    const auto profiles = federation_.Profiles(*channels);
    const auto params = AggregationParams::For(
        profiles, federation_.power_limit, federation_.noise_power);

    if (!selection_ || config_.round_mode == RoundMode::kPerRound) {
      const auto start = std::chrono::steady_clock::now();
      selection_ = RunMethod(config_.method, profiles, params, config_.sca,
                             config_.adsbf);
      metrics.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    }
    const SelectionOutcome& sel = *selection_;
    const auto chosen = SelectedIndices(sel.selection);

    Rng batch_rng = streams_.Stream(StreamPurpose::kBatch, t);
    std::vector<GradientMessage> messages;
    std::vector<DeviceProfile> chosen_profiles;
    messages.reserve(chosen.size());
    double selected_samples = 0.0;
    for (std::size_t m : chosen) {
      const Dataset& local = federation_.local_data[m];
      std::vector<std::size_t> rows;
      if (config_.batch_size > 0 && config_.batch_size < local.size()) {
        rows.resize(local.size());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        std::shuffle(rows.begin(), rows.end(), batch_rng);
        rows.resize(config_.batch_size);
        std::sort(rows.begin(), rows.end());
      }
      messages.push_back(
          GradientMessage::FromGradient(model_.Gradient(local, rows)));
      chosen_profiles.push_back(profiles[m]);
      selected_samples += static_cast<double>(profiles[m].dataset_size);
    }

    Rng noise_rng = streams_.Stream(StreamPurpose::kNoise, t);
    const AggregateResult agg = OtaAggregate(messages, sel.beamformer,
                                             chosen_profiles, params, noise_rng);
    if (observer_) observer_(t, sel, agg);
    model_.weights() -=
        (config_.learning_rate / selected_samples) * agg.estimate;

    metrics.test_loss = model_.Loss(federation_.test_data);
    metrics.test_accuracy = model_.Accuracy(federation_.test_data);
    metrics.d_value = sel.d_value;
    metrics.num_selected = chosen.size();
  } catch (const std::exception& e) {
    std::throw_with_nested(RoundError(t, e.what()));
  }
  ++round_;
  return metrics;
}

TrainingTrace Trainer::Run() {
  TrainingTrace trace;
  trace.reserve(config_.rounds);
  for (std::size_t i = 0; i < config_.rounds; ++i) trace.push_back(RunRound());
  return trace;
}

}  // namespace otafl
