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

#include "otafl/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otafl/errors.hpp"

namespace otafl {

SelectionVector::SelectionVector(std::initializer_list<int> bits) {
  mask_.reserve(bits.size());
  for (int b : bits) mask_.push_back(b != 0 ? 1 : 0);
}

SelectionVector SelectionVector::FromIndices(
    std::size_t n, std::span<const std::size_t> indices) {
  SelectionVector s(n);
  for (std::size_t m : indices) {
    if (m >= n) throw ParameterError("selection index out of range");
    s.Set(m, true);
  }
  return s;
}

std::size_t SelectionVector::Count() const {
  return static_cast<std::size_t>(
      std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

Beamformer::Beamformer(CVector direction) : f_(std::move(direction)) {
  const double norm = f_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("beamformer direction must be finite and nonzero");
  }
  f_ /= norm;
}

AggregationParams AggregationParams::For(
    std::span<const DeviceProfile> profiles, double power_limit,
    double noise_power) {
  if (!(power_limit > 0.0)) throw ParameterError("P0 must be positive");
  if (!(noise_power >= 0.0)) throw ParameterError("noise power must be >= 0");
  AggregationParams p{power_limit, noise_power, 0.0};
  for (const auto& dev : profiles) {
    if (dev.dataset_size < 1) throw ParameterError("dataset size must be >= 1");
    p.total_samples += static_cast<double>(dev.dataset_size);
  }
  return p;
}

std::vector<DeviceProfile> MakeProfiles(std::span<const CVector> channels,
                                        std::span<const std::int64_t> sizes) {
  if (channels.size() != sizes.size()) {
    throw ParameterError("channel and dataset-size counts differ");
  }
  std::vector<DeviceProfile> out;
  out.reserve(channels.size());
  for (std::size_t m = 0; m < channels.size(); ++m) {
    if (sizes[m] < 1) throw ParameterError("dataset size must be >= 1");
    if (m > 0 && channels[m].size() != channels[0].size()) {
      throw ParameterError("inconsistent channel dimensions");
    }
    out.push_back({m, sizes[m], channels[m]});
  }
  return out;
}

std::vector<std::size_t> SelectedIndices(const SelectionVector& s) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (s[m]) out.push_back(m);
  }
  return out;
}

namespace {

void CheckSizes(const SelectionVector& s,
                std::span<const DeviceProfile> profiles) {
  if (s.size() != profiles.size()) {
    throw ParameterError("selection length differs from device count");
  }
}

}  // namespace

double ExclusionTerm(const SelectionVector& s,
                     std::span<const DeviceProfile> profiles,
                     const AggregationParams& params) {
  CheckSizes(s, profiles);
  double excluded = 0.0;
  for (std::size_t m = 0; m < profiles.size(); ++m) {
    if (!s[m]) excluded += static_cast<double>(profiles[m].dataset_size);
  }
  const double k = params.total_samples;
  return 4.0 * excluded * excluded / (k * k);
}

double WorstGainRatio(const Beamformer& f, const SelectionVector& s,
                      std::span<const DeviceProfile> profiles) {
  CheckSizes(s, profiles);
  double worst = 0.0;
  for (std::size_t m = 0; m < profiles.size(); ++m) {
    if (!s[m]) continue;
    const double gain = f.Gain(profiles[m].channel);
    if (gain == 0.0) return std::numeric_limits<double>::infinity();
    const double k = static_cast<double>(profiles[m].dataset_size);
    worst = std::max(worst, k * k / gain);
  }
  return worst;
}

double ErrorMetric(const Beamformer& f, const SelectionVector& s,
                   std::span<const DeviceProfile> profiles,
                   const AggregationParams& params) {
  CheckSizes(s, profiles);
  double selected_samples = 0.0;
  for (std::size_t m = 0; m < profiles.size(); ++m) {
    if (s[m]) selected_samples += static_cast<double>(profiles[m].dataset_size);
  }
  if (selected_samples == 0.0) {
    throw DomainError("error metric needs at least one selected device");
  }
  const double worst = WorstGainRatio(f, s, profiles);
  if (std::isinf(worst)) return worst;
  const double noise_term = params.noise_power /
                            (params.power_limit * selected_samples *
                             selected_samples) *
                            worst;
  return ExclusionTerm(s, profiles, params) + noise_term;
}

}  // namespace otafl
