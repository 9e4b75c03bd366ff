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

#include "otafl/channel.hpp"

#include <string>

#include "otafl/errors.hpp"

namespace otafl {

Geometry SampleDistances(std::size_t num_devices, double r_min, double r_max,
                         Rng& rng) {
  if (num_devices == 0) throw ParameterError("need at least one device");
  if (!(r_min > 0.0) || !(r_max >= r_min) || !std::isfinite(r_max)) {
    throw ParameterError("distance bounds must satisfy 0 < r_min <= r_max");
  }
  Geometry g{std::vector<double>(num_devices, r_min), r_min, r_max};
  if (r_max == r_min) return g;
  std::uniform_real_distribution<double> uniform(r_min, r_max);
  for (double& d : g.distances) d = uniform(rng);
  return g;
}

double PathLossDb(double distance_m) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw ParameterError("distance must be positive, got " +
                         std::to_string(distance_m));
  }
  return 139.1 + 35.22 * std::log10(distance_m / 1000.0);
}

ChannelSet SampleChannelsFromLoss(const std::vector<double>& path_loss_linear,
                                  std::size_t num_antennas, Rng& rng,
                                  RoundMode mode) {
  if (num_antennas == 0) throw ParameterError("need at least one antenna");
  ChannelSet set;
  set.round_mode = mode;
  set.channels.reserve(path_loss_linear.size());
  const auto n = static_cast<Eigen::Index>(num_antennas);
  for (double pl : path_loss_linear) {
    if (!(pl > 0.0)) throw ParameterError("path loss must be positive");
    CVector h(n);
    const double variance = 1.0 / pl;
    for (Eigen::Index i = 0; i < n; ++i) h[i] = ComplexGaussian(rng, variance);
    set.channels.push_back(std::move(h));
  }
  return set;
}

ChannelSet SampleChannels(const Geometry& geometry, std::size_t num_antennas,
                          Rng& rng, RoundMode mode) {
  std::vector<double> loss;
  loss.reserve(geometry.distances.size());
  for (double d : geometry.distances) loss.push_back(DbToLinear(PathLossDb(d)));
  return SampleChannelsFromLoss(loss, num_antennas, rng, mode);
}

}  // namespace otafl
