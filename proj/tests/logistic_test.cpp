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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace otafl {
namespace {

TEST(SoftmaxLossTest, ZeroWeightsGiveLogC) {
  std::mt19937_64 rng(1);
  const Dataset data = testing::RandomDataset(rng, 30, 5, 10);
  const SoftmaxModel model(10, 5);
  EXPECT_NEAR(model.Loss(data), std::log(10.0), 1e-14);
  EXPECT_NEAR(std::log(10.0), 2.302585, 1e-6);
}

TEST(SoftmaxLossTest, LargeMarginDrivesLossToZero) {
  Dataset one;
  one.num_classes = 3;
  one.features = RMatrix::Zero(1, 2);
  one.labels = {2};
  SoftmaxModel model(3, 2);
  double prev = model.Loss(one);
  for (double bias : {1.0, 10.0, 100.0, 800.0}) {
    model.weights()[2 * 3 + 2] = bias;
    const double loss = model.Loss(one);
    EXPECT_TRUE(std::isfinite(loss));
    EXPECT_GE(loss, 0.0);
    if (prev > 0) EXPECT_LT(loss, prev);
    prev = loss;
  }
  EXPECT_LT(prev, 1e-300);
}

TEST(SoftmaxLossTest, MatchesLoopOracle) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset data = testing::RandomDataset(rng, 25, 4, 3);
    RVector w(3 * 5);
    for (auto& v : w) v = 2 * normal(rng);
    const SoftmaxModel model(3, 4, w);
    EXPECT_NEAR(model.Loss(data), testing::OracleLoss(w, data), 1e-12);
  }
}

TEST(SoftmaxGradientTest, SymmetricToySetHasZeroBiasGradient) {
  Dataset toy;
  toy.num_classes = 2;
  toy.features.resize(4, 2);
  toy.features << 1, 0, -1, 0, 0, 1, 0, -1;
  toy.labels = {0, 0, 1, 1};
  const RVector g = SoftmaxModel(2, 2).Gradient(toy);
  EXPECT_NEAR(g[2], 0.0, 1e-15);
  EXPECT_NEAR(g[5], 0.0, 1e-15);
}

TEST(SoftmaxGradientTest, CentralDifferences) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    const Dataset data = testing::RandomDataset(rng, 20, 4, 3);
    RVector w(15);
    for (auto& v : w) v = normal(rng);
    const RVector analytic = SoftmaxModel(3, 4, w).Gradient(data);
    const RVector numeric = testing::CentralDifferences(
        [&](const Eigen::VectorXd& x) { return testing::OracleLoss(x, data); }, w,
        1e-5);
    const double scale = std::max(1.0, numeric.lpNorm<Eigen::Infinity>());
    EXPECT_LT((analytic - numeric).lpNorm<Eigen::Infinity>() / scale, 1e-5);
  }
}

TEST(SoftmaxGradientTest, FullBatchIsMeanOfPerSample) {
  std::mt19937_64 rng(4);
  const Dataset data = testing::RandomDataset(rng, 12, 3, 4);
  RVector w = RVector::LinSpaced(16, -1, 1);
  const SoftmaxModel model(4, 3, w);
  RVector sum = RVector::Zero(16);
  for (std::size_t i = 0; i < data.size(); ++i) sum += model.Gradient(data, {i});
  EXPECT_LE((model.Gradient(data) - sum / 12.0).norm(), 1e-14);
  EXPECT_LE((model.Gradient(data, {1, 5, 7}) -
             (model.Gradient(data, {1}) + model.Gradient(data, {5}) +
              model.Gradient(data, {7})) / 3.0)
                .norm(),
            1e-14);
}

TEST(SoftmaxAccuracyTest, InvariantToPositiveRescaling) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  const Dataset data = testing::RandomDataset(rng, 200, 6, 5);
  RVector w(35);
  for (auto& v : w) v = normal(rng);
  const double acc = SoftmaxModel(5, 6, w).Accuracy(data);
  EXPECT_EQ(SoftmaxModel(5, 6, RVector(3.5 * w)).Accuracy(data), acc);
  EXPECT_EQ(SoftmaxModel(5, 6, RVector(0.01 * w)).Accuracy(data), acc);
}

}  // namespace
}  // namespace otafl
