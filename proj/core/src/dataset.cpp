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

#include "otafl/dataset.hpp"

#include <algorithm>
#include <string>

#include "otafl/errors.hpp"

namespace otafl {

void Dataset::Validate() const {
  if (num_classes < 1) throw ParameterError("dataset needs at least one class");
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw ParameterError("feature rows and labels differ in count");
  }
  for (int y : labels) {
    if (y < 0 || y >= num_classes) {
      throw ParameterError("label " + std::to_string(y) + " out of range");
    }
  }
}

Dataset Dataset::Subset(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.num_classes = num_classes;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= size()) throw ParameterError("subset row out of range");
    out.features.row(static_cast<Eigen::Index>(i)) =
        features.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(labels[rows[i]]);
  }
  return out;
}

GaussianClusters GaussianClusters::Create(const GaussianClustersSpec& spec,
                                          Rng& rng) {
  if (spec.num_classes < 2) throw ParameterError("need at least two classes");
  if (spec.feature_dim == 0) throw ParameterError("feature_dim must be >= 1");
  GaussianClusters gc;
  gc.spec = spec;
  gc.means.resize(spec.num_classes, static_cast<Eigen::Index>(spec.feature_dim));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index c = 0; c < gc.means.rows(); ++c) {
    for (Eigen::Index j = 0; j < gc.means.cols(); ++j) {
      gc.means(c, j) = spec.separation * normal(rng);
    }
  }
  return gc;
}

Dataset GaussianClusters::Sample(std::size_t n, Rng& rng) const {
  Dataset out;
  out.num_classes = spec.num_classes;
  out.features.resize(static_cast<Eigen::Index>(n), means.cols());
  out.labels.resize(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % static_cast<std::size_t>(spec.num_classes));
    out.labels[i] = label;
    const auto row = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < means.cols(); ++j) {
      out.features(row, j) = means(label, j) + spec.noise * normal(rng);
    }
  }
  return out;
}

std::vector<Dataset> PartitionIid(const Dataset& dataset,
                                  std::size_t num_devices,
                                  std::size_t per_device, Rng& rng) {
  dataset.Validate();
  if (num_devices == 0 || per_device == 0) {
    throw ParameterError("partition needs devices and samples per device");
  }
  const auto classes = static_cast<std::size_t>(dataset.num_classes);
  std::vector<std::vector<std::size_t>> by_class(classes);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_class[static_cast<std::size_t>(dataset.labels[i])].push_back(i);
  }
  const std::size_t base = per_device / classes;
  const std::size_t extra = per_device % classes;
  for (std::size_t c = 0; c < classes; ++c) {
    const std::size_t need = num_devices * (base + (c < extra ? 1 : 0));
    if (by_class[c].size() < need) {
      throw ParameterError("insufficient data: class " + std::to_string(c) +
                           " has " + std::to_string(by_class[c].size()) +
                           " samples, partition needs " + std::to_string(need));
    }
    std::shuffle(by_class[c].begin(), by_class[c].end(), rng);
  }
  std::vector<Dataset> shards;
  shards.reserve(num_devices);
  std::vector<std::size_t> cursor(classes, 0);
  for (std::size_t m = 0; m < num_devices; ++m) {
    std::vector<std::size_t> rows;
    rows.reserve(per_device);
    for (std::size_t c = 0; c < classes; ++c) {
      const std::size_t take = base + (c < extra ? 1 : 0);
      for (std::size_t k = 0; k < take; ++k) rows.push_back(by_class[c][cursor[c]++]);
    }
    std::sort(rows.begin(), rows.end());
    shards.push_back(dataset.Subset(rows));
  }
  return shards;
}

}  // namespace otafl
