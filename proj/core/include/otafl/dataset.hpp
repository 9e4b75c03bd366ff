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

#ifndef OTAFL_DATASET_HPP_
#define OTAFL_DATASET_HPP_

#include <cstddef>
#include <vector>

#include "otafl/linalg.hpp"
#include "otafl/random.hpp"

namespace otafl {

// Row-major sample matrix (one sample per row) with integer labels.
struct Dataset {
  RMatrix features;         // n x b
  std::vector<int> labels;  // n entries in [0, num_classes)
  int num_classes = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t feature_dim() const {
    return static_cast<std::size_t>(features.cols());
  }

  // Throws ParameterError when sizes disagree or a label is out of range.
  void Validate() const;

  Dataset Subset(const std::vector<std::size_t>& rows) const;
};

struct GaussianClustersSpec {
  int num_classes = 10;
  std::size_t feature_dim = 20;
  double separation = 1.0;  // std-dev of the class means
  double noise = 1.0;       // within-class std-dev
};

// Class means are drawn once from N(0, separation^2 I); samples are
// mean + N(0, noise^2 I). Labels cycle through the classes so every class
// has floor or ceil of n / C samples.
struct GaussianClusters {
  GaussianClustersSpec spec;
  RMatrix means;  // C x b

  static GaussianClusters Create(const GaussianClustersSpec& spec, Rng& rng);
  Dataset Sample(std::size_t n, Rng& rng) const;
};

// Splits `dataset` into `num_devices` disjoint shards of `per_device`
// samples each, every shard holding per_device / C samples of every class
// (the first per_device % C classes get one extra). Throws ParameterError
// when some class does not have enough samples.
std::vector<Dataset> PartitionIid(const Dataset& dataset,
                                  std::size_t num_devices,
                                  std::size_t per_device, Rng& rng);

}  // namespace otafl

#endif  // OTAFL_DATASET_HPP_
