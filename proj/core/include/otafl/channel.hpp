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

#ifndef OTAFL_CHANNEL_HPP_
#define OTAFL_CHANNEL_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "otafl/linalg.hpp"
#include "otafl/random.hpp"

namespace otafl {

// Device-to-server distances in meters, drawn i.i.d. from U[r_min, r_max].
struct Geometry {
  std::vector<double> distances;
  double r_min = 0.0;
  double r_max = 0.0;
};

enum class RoundMode {
  kStatic,    // fading drawn once and held for the whole training run
  kPerRound,  // i.i.d. fading redraw every communication round
};

struct ChannelSet {
  std::vector<CVector> channels;  // one N-vector per device
  RoundMode round_mode = RoundMode::kStatic;

  std::size_t num_devices() const { return channels.size(); }
  std::size_t num_antennas() const {
    return channels.empty() ? 0 : static_cast<std::size_t>(channels[0].size());
  }
};

// Requires M >= 1 and 0 < r_min <= r_max. r_min == r_max yields a constant
// geometry.
Geometry SampleDistances(std::size_t num_devices, double r_min, double r_max,
                         Rng& rng);

// COST-Hata path loss: 139.1 + 35.22 log10(d / 1 km), d in meters.
double PathLossDb(double distance_m);

inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

// dBm to watts: 0 dBm = 1 mW.
inline double DbmToWatts(double dbm) { return DbToLinear(dbm) * 1e-3; }

// h_m ~ CN(0, I_N / PL_m) with PL_m the linear path loss of device m.
ChannelSet SampleChannels(const Geometry& geometry, std::size_t num_antennas,
                          Rng& rng, RoundMode mode = RoundMode::kStatic);

// Same draw model with explicit linear path losses (1.0 = 0 dB).
ChannelSet SampleChannelsFromLoss(const std::vector<double>& path_loss_linear,
                                  std::size_t num_antennas, Rng& rng,
                                  RoundMode mode = RoundMode::kStatic);

}  // namespace otafl

#endif  // OTAFL_CHANNEL_HPP_
