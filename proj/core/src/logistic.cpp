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

#include "otafl/logistic.hpp"

#include <cmath>
#include <string>

#include "otafl/errors.hpp"

namespace otafl {
namespace {

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

SoftmaxModel::SoftmaxModel(int num_classes, std::size_t feature_dim)
    : SoftmaxModel(num_classes, feature_dim,
                   RVector::Zero(num_classes *
                                 static_cast<Eigen::Index>(feature_dim + 1))) {}

SoftmaxModel::SoftmaxModel(int num_classes, std::size_t feature_dim,
                           RVector weights)
    : num_classes_(num_classes),
      feature_dim_(feature_dim),
      weights_(std::move(weights)) {
  if (num_classes < 1) throw ParameterError("need at least one class");
  if (weights_.size() !=
      num_classes * static_cast<Eigen::Index>(feature_dim + 1)) {
    throw ParameterError("weight vector must have C * (b + 1) entries");
  }
}

Eigen::Map<const RowMajor> SoftmaxModel::Matrix() const {
  return {weights_.data(), num_classes_,
          static_cast<Eigen::Index>(feature_dim_ + 1)};
}

void SoftmaxModel::CheckData(const Dataset& data) const {
  if (data.feature_dim() != feature_dim_) {
    throw ParameterError("feature dimension " +
                         std::to_string(data.feature_dim()) +
                         " does not match model (" +
                         std::to_string(feature_dim_) + ")");
  }
  if (data.num_classes > num_classes_) {
    throw ParameterError("dataset has more classes than the model");
  }
}

RMatrix SoftmaxModel::Scores(const Dataset& data) const {
  CheckData(data);
  const auto w = Matrix();
  const auto b = static_cast<Eigen::Index>(feature_dim_);
  RMatrix scores = data.features * w.leftCols(b).transpose();
  scores.rowwise() += w.col(b).transpose();
  return scores;
}

double SoftmaxModel::Loss(const Dataset& data) const {
  if (data.size() == 0) return 0.0;
  const RMatrix scores = Scores(data);
  double total = 0.0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double peak = scores.row(i).maxCoeff();
    const double lse =
        peak + std::log((scores.row(i).array() - peak).exp().sum());
    total += lse - scores(i, data.labels[static_cast<std::size_t>(i)]);
  }
  return total / static_cast<double>(scores.rows());
}

double SoftmaxModel::Accuracy(const Dataset& data) const {
  if (data.size() == 0) return 0.0;
  const RMatrix scores = Scores(data);
  std::size_t hits = 0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index arg = 0;
    scores.row(i).maxCoeff(&arg);
    if (arg == data.labels[static_cast<std::size_t>(i)]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(scores.rows());
}

RVector SoftmaxModel::Gradient(const Dataset& data,
                               const std::vector<std::size_t>& rows) const {
  CheckData(data);
  const auto b = static_cast<Eigen::Index>(feature_dim_);
  const Dataset batch = rows.empty() ? Dataset{} : data.Subset(rows);
  const Dataset& used = rows.empty() ? data : batch;
  if (used.size() == 0) throw ParameterError("gradient over an empty batch");

  RMatrix probs = Scores(used);
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    const double peak = probs.row(i).maxCoeff();
    probs.row(i) = (probs.row(i).array() - peak).exp();
    probs.row(i) /= probs.row(i).sum();
    probs(i, used.labels[static_cast<std::size_t>(i)]) -= 1.0;
  }
  RowMajor grad(num_classes_, b + 1);
  grad.leftCols(b) = probs.transpose() * used.features;
  grad.col(b) = probs.colwise().sum().transpose();
  grad /= static_cast<double>(used.size());
  return Eigen::Map<const RVector>(grad.data(), grad.size());
}

}  // namespace otafl
