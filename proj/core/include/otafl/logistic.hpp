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

#ifndef OTAFL_LOGISTIC_HPP_
#define OTAFL_LOGISTIC_HPP_

#include <cstddef>
#include <vector>

#include "otafl/dataset.hpp"
#include "otafl/linalg.hpp"

namespace otafl {

// Multinomial logistic regression with parameters laid out class-major:
// w = [w^(0); ...; w^(C-1)], each w^(j) = [weights (b); bias].
class SoftmaxModel {
 public:
  SoftmaxModel(int num_classes, std::size_t feature_dim);
  SoftmaxModel(int num_classes, std::size_t feature_dim, RVector weights);

  int num_classes() const { return num_classes_; }
  std::size_t feature_dim() const { return feature_dim_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(weights_.size());
  }

  const RVector& weights() const { return weights_; }
  RVector& weights() { return weights_; }

  // C x (b+1) view of the parameter vector.
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
  Matrix() const;

  // Class scores u^T w^(j) for every sample (n x C).
  RMatrix Scores(const Dataset& data) const;

  // Mean cross-entropy with natural log, log-sum-exp stabilized.
  double Loss(const Dataset& data) const;
  double Accuracy(const Dataset& data) const;

  // Mean gradient over `rows` (all rows when empty).
  RVector Gradient(const Dataset& data,
                   const std::vector<std::size_t>& rows = {}) const;

 private:
  void CheckData(const Dataset& data) const;

  int num_classes_;
  std::size_t feature_dim_;
  RVector weights_;
};

}  // namespace otafl

#endif  // OTAFL_LOGISTIC_HPP_
