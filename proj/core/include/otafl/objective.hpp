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

#ifndef OTAFL_OBJECTIVE_HPP_
#define OTAFL_OBJECTIVE_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "otafl/linalg.hpp"

namespace otafl {

struct DeviceProfile {
  std::size_t index = 0;
  std::int64_t dataset_size = 1;  // K_m
  CVector channel;                // h_m
};

// Binary participation mask over all M devices.
class SelectionVector {
 public:
  SelectionVector() = default;
  explicit SelectionVector(std::size_t num_devices, bool value = false)
      : mask_(num_devices, value ? 1 : 0) {}
  SelectionVector(std::initializer_list<int> bits);

  static SelectionVector All(std::size_t n) { return SelectionVector(n, true); }
  static SelectionVector FromIndices(std::size_t n,
                                     std::span<const std::size_t> indices);

  std::size_t size() const { return mask_.size(); }
  bool operator[](std::size_t m) const { return mask_[m] != 0; }
  void Set(std::size_t m, bool value) { mask_[m] = value ? 1 : 0; }
  std::size_t Count() const;
  bool Any() const { return Count() > 0; }

  friend bool operator==(const SelectionVector&,
                         const SelectionVector&) = default;

 private:
  std::vector<std::uint8_t> mask_;
};

// Unit-norm receive beamformer. Construction normalizes the given vector.
class Beamformer {
 public:
  Beamformer() = default;
  // Throws DomainError for a zero or non-finite vector.
  explicit Beamformer(CVector direction);

  const CVector& vector() const { return f_; }
  std::size_t dimension() const { return static_cast<std::size_t>(f_.size()); }
  double Gain(const CVector& h) const { return otafl::Gain(f_, h); }

 private:
  CVector f_;
};

struct AggregationParams {
  double power_limit = 1e-3;  // P0 [W]
  double noise_power = 1e-5;  // sigma_n^2 [W]
  double total_samples = 0;   // K = sum_m K_m

  // Fills total_samples from the profiles and validates P0 > 0, noise >= 0.
  static AggregationParams For(std::span<const DeviceProfile> profiles,
                               double power_limit, double noise_power);
};

// Builds profiles with index = position.
std::vector<DeviceProfile> MakeProfiles(std::span<const CVector> channels,
                                        std::span<const std::int64_t> sizes);

// {m : s[m] = 1}, ascending.
std::vector<std::size_t> SelectedIndices(const SelectionVector& s);

// Aggregation error metric
//   d(f,s) = 4/K^2 (sum_m (1-s_m) K_m)^2
//          + sigma^2 / (P0 (sum_m s_m K_m)^2) * max_{s_m=1} K_m^2/|f^H h_m|^2.
// Throws DomainError for an empty selection. Returns +infinity when a
// selected device has zero beamforming gain so that search loops can rank
// degenerate candidates.
double ErrorMetric(const Beamformer& f, const SelectionVector& s,
                   std::span<const DeviceProfile> profiles,
                   const AggregationParams& params);

// The exclusion term alone, 4/K^2 (sum_m (1-s_m) K_m)^2.
double ExclusionTerm(const SelectionVector& s,
                     std::span<const DeviceProfile> profiles,
                     const AggregationParams& params);

// max over selected m of K_m^2 / |f^H h_m|^2 (+infinity on zero gain).
double WorstGainRatio(const Beamformer& f, const SelectionVector& s,
                      std::span<const DeviceProfile> profiles);

}  // namespace otafl

#endif  // OTAFL_OBJECTIVE_HPP_
