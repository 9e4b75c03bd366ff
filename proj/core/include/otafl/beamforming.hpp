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

#ifndef OTAFL_BEAMFORMING_HPP_
#define OTAFL_BEAMFORMING_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "otafl/errors.hpp"
#include "otafl/linalg.hpp"
#include "otafl/min_norm_qp.hpp"
#include "otafl/objective.hpp"

namespace otafl {

// f~ = sqrt(c) f for the power-minimization form
//   minimize ||f~||^2  s.t.  |f~^H h_m|^2 >= K_m^2  for selected m.
struct UnscaledBeamformer {
  CVector vector;

  double SquaredNorm() const { return vector.squaredNorm(); }
};

struct ScaSettings {
  std::size_t max_iters = 50;
  double objective_tol = 1e-6;   // relative change in ||f~||^2
  double constraint_tol = 1e-8;  // absolute, on K_m^2 - |f~^H h_m|^2 scaled by K_m^2
  // Extra SCA runs for cold solves, from the best-screened alternative
  // directions (selected channel directions and the dominant eigenvector
  // of sum h h^H / K^2).
  std::size_t restarts = 3;
  // Try doubled steps along each SCA update before accepting it.
  bool extrapolate = true;
};

struct MulticastSolution {
  Beamformer beamformer;         // f~/||f~||
  UnscaledBeamformer unscaled;   // tightened so the worst constraint binds
  double objective = 0.0;        // ||f~||^2 = max_m K_m^2 / |f^H h_m|^2
  std::vector<double> trace;     // objective after init and after every step
  std::size_t iterations = 0;
  std::size_t start = 0;         // 0 = primary start, k = k-th restart
  bool converged = false;        // relative change fell below objective_tol
};

// Thrown when an SCA step's QP fails. Carries the best feasible iterate.
class ScaError : public SolverError {
 public:
  ScaError(const std::string& what, UnscaledBeamformer best)
      : SolverError(what), best_(std::move(best)) {}
  const UnscaledBeamformer& best() const { return best_; }

 private:
  UnscaledBeamformer best_;
};

// Smallest c such that sqrt(c)-scaled direction meets every constraint,
// i.e. max_m K_m / |f^H h_m|. +infinity if some gain is zero.
double FeasibilityScale(const CVector& direction,
                        std::span<const DeviceProfile> selected);

// Scales `direction` onto the boundary of the feasible set (worst
// constraint tight). Throws DomainError when a gain is zero.
UnscaledBeamformer ScaleToFeasibility(const CVector& direction,
                                      std::span<const DeviceProfile> selected);

// Feasible starting point: the max-norm channel direction scaled to
// feasibility, falling back to deterministic random-phase combinations of
// the channel directions when that direction is orthogonal to a channel.
UnscaledBeamformer FeasibleInit(std::span<const DeviceProfile> selected);

// True when |f~^H h_m|^2 >= K_m^2 (1 - tol) for every selected m.
bool IsFeasible(const UnscaledBeamformer& f,
                std::span<const DeviceProfile> selected, double tol);

// Stateful SCA solver for the single-group multicast QoS problem. Holds the
// QP workspace; reuse one instance per thread.
class MulticastSolver {
 public:
  explicit MulticastSolver(ScaSettings settings = {});

  // One SCA step: minimizes ||f~||^2 subject to the constraints linearized
  // at `current`,
  //   2 Re(current^H h_m h_m^H f~) - |current^H h_m|^2 >= K_m^2.
  UnscaledBeamformer Step(const UnscaledBeamformer& current,
                          std::span<const DeviceProfile> selected);

  // With a usable `warm_start`: one SCA run from it, re-scaled to
  // feasibility. Otherwise a run from FeasibleInit plus settings().restarts
  // runs from screened alternative starts; the best run is returned with
  // its own trace, and failures in restarts are ignored.
  MulticastSolution Solve(std::span<const DeviceProfile> selected,
                          const std::optional<CVector>& warm_start = {});

  // One SCA run from a feasible start.
  MulticastSolution Run(std::span<const DeviceProfile> selected,
                        UnscaledBeamformer start);

  const ScaSettings& settings() const { return settings_; }

 private:
  ScaSettings settings_;
  MinNormQpSolver qp_;
  RMatrix rows_;
  RVector rhs_;
};

}  // namespace otafl

#endif  // OTAFL_BEAMFORMING_HPP_
