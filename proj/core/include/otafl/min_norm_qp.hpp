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

#ifndef OTAFL_MIN_NORM_QP_HPP_
#define OTAFL_MIN_NORM_QP_HPP_

#include <cstddef>
#include <vector>

#include "otafl/linalg.hpp"

namespace otafl {

struct MinNormQpResult {
  RVector x;                         // primal minimizer
  RVector multipliers;               // one per constraint, >= 0
  std::vector<std::size_t> active;   // active constraint indices
  std::size_t iterations = 0;
  double max_violation = 0.0;        // max_j (b_j - a_j^T x)^+
  double complementarity = 0.0;      // max_j u_j |a_j^T x - b_j|
  double stationarity = 0.0;         // ||x - A^T u||_inf
};

// Solves   minimize 0.5 ||x||^2   subject to   A x >= b
// with the Goldfarb-Idnani dual active-set method. The Hessian is the
// identity, so the method starts at the unconstrained minimizer x = 0 and
// adds the most violated constraint per outer iteration, dropping
// constraints whose multipliers would turn negative.
//
// The solver owns its workspace; an instance is not reentrant but distinct
// instances may be used concurrently.
class MinNormQpSolver {
 public:
  struct Options {
    double feasibility_tol = 1e-10;  // relative to max(1, |b|_inf)
    double kkt_tol = 1e-8;
    std::size_t max_iterations = 0;  // 0 selects 10 * (rows + cols) + 50
  };

  MinNormQpSolver() = default;
  explicit MinNormQpSolver(Options options) : options_(options) {}

  // Throws SolverError when the constraints are infeasible, the iteration
  // budget is exhausted, or the KKT residuals exceed kkt_tol.
  MinNormQpResult Solve(const RMatrix& a, const RVector& b);

  const Options& options() const { return options_; }

 private:
  void Factor();
  // z = (I - N N^+) n_p (primal step) and r = N^+ n_p (dual step).
  void StepDirections(const RVector& normal, RVector& z, RVector& r) const;

  Options options_;
  RMatrix active_normals_;  // columns: normals of the active constraints
  Eigen::HouseholderQR<RMatrix> qr_;
};

}  // namespace otafl

#endif  // OTAFL_MIN_NORM_QP_HPP_
