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

#include "otafl/random.hpp"

#include <cmath>

namespace otafl {

std::string_view PurposeName(StreamPurpose purpose) {
  switch (purpose) {
    case StreamPurpose::kGeometry: return "geometry";
    case StreamPurpose::kFading: return "fading";
    case StreamPurpose::kNoise: return "noise";
    case StreamPurpose::kData: return "data";
    case StreamPurpose::kBatch: return "batch";
    case StreamPurpose::kPartition: return "partition";
  }
  return "unknown";
}

std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng RngStreams::Stream(StreamPurpose purpose, std::uint64_t index) const {
  std::uint64_t h = MixSeed(master_);
  h = MixSeed(h ^ static_cast<std::uint64_t>(purpose));
  h = MixSeed(h ^ index);
  std::seed_seq seq{static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(purpose),
                    static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

Complex ComplexGaussian(Rng& rng, double variance) {
  // Unit normals scaled afterwards so the stream advances identically for
  // every variance, including zero.
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(variance / 2.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {scale * re, scale * im};
}

}  // namespace otafl
