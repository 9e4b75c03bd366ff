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

#include "otafl/min_norm_qp.hpp"

#include <random>

#include <gtest/gtest.h>

#include "otafl/errors.hpp"

namespace otafl {
namespace {

void ExpectKkt(const RMatrix& a, const RVector& b, const MinNormQpResult& r) {
  const RVector slack = a * r.x - b;
  EXPECT_GE(slack.minCoeff(), -1e-9);
  EXPECT_GE(r.multipliers.minCoeff(), 0.0);
  EXPECT_LE((r.x - a.transpose() * r.multipliers).lpNorm<Eigen::Infinity>(),
            1e-8 * std::max(1.0, r.x.norm()));
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    EXPECT_LE(r.multipliers[j] * std::abs(slack[j]),
              1e-8 * std::max(1.0, b.cwiseAbs().maxCoeff()));
  }
}

TEST(MinNormQpTest, SingleHalfspaceIsProjection) {
  RMatrix a(1, 3);
  a << 1, 2, 2;
  RVector b(1);
  b << 9;
  MinNormQpSolver solver;
  const auto r = solver.Solve(a, b);
  EXPECT_NEAR((r.x - RVector(a.row(0).transpose())).norm(), 0.0, 1e-12);
  ExpectKkt(a, b, r);
}

TEST(MinNormQpTest, InactiveConstraintsAtOrigin) {
  RMatrix a = RMatrix::Identity(2, 2);
  RVector b(2);
  b << -1, -3;
  MinNormQpSolver solver;
  const auto r = solver.Solve(a, b);
  EXPECT_EQ(r.x.norm(), 0.0);
  EXPECT_TRUE(r.active.empty());
}

TEST(MinNormQpTest, RandomInstancesSatisfyKkt) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  MinNormQpSolver solver;
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + trial % 9, cols = 2 + trial % 7;
    RMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
    // Feasible by construction: b below A x0 for some x0.
    RVector x0(cols);
    for (auto& v : x0) v = normal(rng);
    RVector b = a * x0;
    for (auto& v : b) v -= std::abs(normal(rng)) * 0.1;
    const auto r = solver.Solve(a, b);
    ExpectKkt(a, b, r);
    EXPECT_LE(r.x.norm(), x0.norm() + 1e-9);
  }
}

TEST(MinNormQpTest, DuplicateAndDependentRows) {
  RMatrix a(3, 2);
  a << 1, 1, 1, 1, 2, 2;
  RVector b(3);
  b << 2, 2, 4;
  MinNormQpSolver solver;
  const auto r = solver.Solve(a, b);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);
}

TEST(MinNormQpTest, InfeasibleThrows) {
  RMatrix a(2, 1);
  a << 1, -1;
  RVector b(2);
  b << 1, 1;
  MinNormQpSolver solver;
  EXPECT_THROW(solver.Solve(a, b), SolverError);
}

}  // namespace
}  // namespace otafl
