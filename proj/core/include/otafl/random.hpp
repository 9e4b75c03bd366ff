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

#ifndef OTAFL_RANDOM_HPP_
#define OTAFL_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

#include "otafl/linalg.hpp"

namespace otafl {

using Rng = std::mt19937_64;

// Named purposes for independent random streams derived from one master
// seed. Components that draw from different purposes never perturb each
// other, so e.g. every selection method sees the same channel draws for a
// given seed.
enum class StreamPurpose : std::uint64_t {
  kGeometry = 1,
  kFading = 2,
  kNoise = 3,
  kData = 4,
  kBatch = 5,
  kPartition = 6,
};

std::string_view PurposeName(StreamPurpose purpose);

// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t MixSeed(std::uint64_t x);

class RngStreams {
 public:
  explicit RngStreams(std::uint64_t master_seed) : master_(master_seed) {}

  std::uint64_t master_seed() const { return master_; }

  // Deterministic stream for `purpose`; `index` selects a sub-stream
  // (e.g. the communication round for per-round fading).
  Rng Stream(StreamPurpose purpose, std::uint64_t index = 0) const;

 private:
  std::uint64_t master_;
};

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
Complex ComplexGaussian(Rng& rng, double variance);

}  // namespace otafl

#endif  // OTAFL_RANDOM_HPP_
