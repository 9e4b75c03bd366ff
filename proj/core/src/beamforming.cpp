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

#include "otafl/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <utility>

#include "otafl/random.hpp"

namespace otafl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kInitRetries = 16;
// A direction whose gain toward a channel is below this fraction of the
// channel norm is treated as orthogonal to it.
constexpr double kOrthogonalityTol = 1e-12;

bool Nondegenerate(const CVector& unit_direction,
                   std::span<const DeviceProfile> selected) {
  for (const auto& dev : selected) {
    const double h_norm = dev.channel.norm();
    if (h_norm == 0.0) return false;
    if (std::abs(unit_direction.dot(dev.channel)) <= kOrthogonalityTol * h_norm) {
      return false;
    }
  }
  return true;
}

void CheckSelected(std::span<const DeviceProfile> selected) {
  if (selected.empty()) throw DomainError("multicast problem needs a device");
  const auto n = selected.front().channel.size();
  for (const auto& dev : selected) {
    if (dev.channel.size() != n) {
      throw ParameterError("inconsistent channel dimensions");
    }
    if (dev.channel.norm() == 0.0) throw DomainError("zero channel vector");
  }
}


// Doubles the step from `from` to `to` while the rescaled point keeps
// improving. Every candidate is re-scaled onto the feasible boundary, so the
// result stays feasible and no worse than `to`.
void Extrapolate(const CVector& from, UnscaledBeamformer& to, double& objective,
                 std::span<const DeviceProfile> selected) {
  const CVector step = to.vector - from;
  for (double alpha = 2.0; alpha <= 64.0; alpha *= 2.0) {
    const CVector trial = from + alpha * step;
    const double scale = FeasibilityScale(trial, selected);
    if (!std::isfinite(scale)) break;
    UnscaledBeamformer candidate = ScaleToFeasibility(trial, selected);
    const double value = candidate.SquaredNorm();
    if (!(value < objective)) break;
    to = std::move(candidate);
    objective = value;
  }
}

}  // namespace

double FeasibilityScale(const CVector& direction,
                        std::span<const DeviceProfile> selected) {
  const double norm = direction.norm();
  if (!(norm > 0.0)) return kInf;
  double c = 0.0;
  for (const auto& dev : selected) {
    const double amp = std::abs(direction.dot(dev.channel)) / norm;
    if (amp == 0.0) return kInf;
    c = std::max(c, static_cast<double>(dev.dataset_size) / amp);
  }
  return c;
}

UnscaledBeamformer ScaleToFeasibility(const CVector& direction,
                                      std::span<const DeviceProfile> selected) {
  const double c = FeasibilityScale(direction, selected);
  if (!std::isfinite(c)) {
    throw DomainError("direction is orthogonal to a selected channel");
  }
  return {direction * (c / direction.norm())};
}

UnscaledBeamformer FeasibleInit(std::span<const DeviceProfile> selected) {
  CheckSelected(selected);
  std::size_t strongest = 0;
  for (std::size_t i = 1; i < selected.size(); ++i) {
    if (selected[i].channel.squaredNorm() >
        selected[strongest].channel.squaredNorm()) {
      strongest = i;
    }
  }
  CVector direction = selected[strongest].channel.normalized();
  if (Nondegenerate(direction, selected)) {
    return ScaleToFeasibility(direction, selected);
  }

  Rng rng(0x5eedf00dULL);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (int attempt = 0; attempt < kInitRetries; ++attempt) {
    direction.setZero();
    for (const auto& dev : selected) {
      direction += std::polar(1.0, phase(rng)) * dev.channel.normalized();
    }
    for (Eigen::Index i = 0; i < direction.size(); ++i) {
      direction[i] += 1e-3 * ComplexGaussian(rng, 1.0);
    }
    direction.normalize();
    if (Nondegenerate(direction, selected)) {
      return ScaleToFeasibility(direction, selected);
    }
  }
  throw DomainError("no feasible initial beamformer found");
}

bool IsFeasible(const UnscaledBeamformer& f,
                std::span<const DeviceProfile> selected, double tol) {
  for (const auto& dev : selected) {
    const double k2 = static_cast<double>(dev.dataset_size) *
                      static_cast<double>(dev.dataset_size);
    if (Gain(f.vector, dev.channel) < k2 * (1.0 - tol)) return false;
  }
  return true;
}

MulticastSolver::MulticastSolver(ScaSettings settings)
    : settings_(settings) {
  if (settings_.max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (!(settings_.objective_tol > 0.0) || !(settings_.constraint_tol > 0.0)) {
    throw ParameterError("SCA tolerances must be positive");
  }
}

UnscaledBeamformer MulticastSolver::Step(
    const UnscaledBeamformer& current,
    std::span<const DeviceProfile> selected) {
  CheckSelected(selected);
  const Eigen::Index n = current.vector.size();
  const auto rows = static_cast<Eigen::Index>(selected.size());
  rows_.resize(rows, 2 * n);
  rhs_.resize(rows);
  for (Eigen::Index j = 0; j < rows; ++j) {
    const auto& dev = selected[static_cast<std::size_t>(j)];
    const Complex alpha = dev.channel.dot(current.vector);  // h^H c
    const CVector u = alpha * dev.channel;
    // 2 Re(u^H f) = 2 (Re u . Re f + Im u . Im f)
    rows_.row(j).head(n) = 2.0 * u.real().transpose();
    rows_.row(j).tail(n) = 2.0 * u.imag().transpose();
    const double k = static_cast<double>(dev.dataset_size);
    rhs_[j] = k * k + std::norm(alpha);
  }
  const MinNormQpResult qp = qp_.Solve(rows_, rhs_);
  UnscaledBeamformer next;
  next.vector.resize(n);
  next.vector.real() = qp.x.head(n);
  next.vector.imag() = qp.x.tail(n);
  return next;
}

MulticastSolution MulticastSolver::Solve(
    std::span<const DeviceProfile> selected,
    const std::optional<CVector>& warm_start) {
  CheckSelected(selected);
  if (warm_start && warm_start->size() == selected.front().channel.size() &&
      Nondegenerate(warm_start->normalized(), selected)) {
    return Run(selected, ScaleToFeasibility(*warm_start, selected));
  }
  UnscaledBeamformer primary = FeasibleInit(selected);
  const CVector primary_dir = primary.vector.normalized();
  MulticastSolution best = Run(selected, std::move(primary));
  if (settings_.restarts == 0 || selected.size() < 2) return best;

  std::vector<CVector> candidates;
  candidates.reserve(selected.size() + 1);
  CMatrix weighted = CMatrix::Zero(primary_dir.size(), primary_dir.size());
  for (const auto& dev : selected) {
    candidates.push_back(dev.channel.normalized());
    const double k = static_cast<double>(dev.dataset_size);
    weighted += dev.channel * dev.channel.adjoint() / (k * k);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(weighted);
  candidates.push_back(eig.eigenvectors().col(primary_dir.size() - 1));

  // Rank by the objective of the rescaled direction; skip near-duplicates
  // of the primary start. Stable order keeps ties on the lower index.
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (std::abs(primary_dir.dot(candidates[i])) > 1.0 - 1e-9) continue;
    const double scale = FeasibilityScale(candidates[i], selected);
    if (std::isfinite(scale)) ranked.emplace_back(scale, i);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t runs = std::min(settings_.restarts, ranked.size());
  for (std::size_t r = 0; r < runs; ++r) {
    try {
      MulticastSolution alt =
          Run(selected, ScaleToFeasibility(candidates[ranked[r].second], selected));
      if (alt.objective < best.objective) {
        alt.start = r + 1;
        best = std::move(alt);
      }
    } catch (const SolverError&) {
      // The primary run already produced a valid answer.
    }
  }
  return best;
}

MulticastSolution MulticastSolver::Run(std::span<const DeviceProfile> selected,
                                       UnscaledBeamformer current) {
  CheckSelected(selected);
  MulticastSolution out;
  double objective = current.SquaredNorm();
  out.trace.push_back(objective);
  for (std::size_t it = 0; it < settings_.max_iters; ++it) {
    UnscaledBeamformer next;
    try {
      next = Step(current, selected);
      // The linearization under-estimates every gain, so the step may leave
      // all constraints slack; shrinking onto the boundary only helps.
      next = ScaleToFeasibility(next.vector, selected);
    } catch (const SolverError& e) {
      throw ScaError(e.what(), current);
    } catch (const DomainError& e) {
      throw ScaError(e.what(), current);
    }
    ++out.iterations;
    double next_objective = next.SquaredNorm();
    if (settings_.extrapolate && next_objective < objective) {
      Extrapolate(current.vector, next, next_objective, selected);
    }
    if (!(next_objective <= objective)) {
      // Round-off can push a converged step marginally uphill.
      out.converged = true;
      break;
    }
    const double change = (objective - next_objective) / objective;
    current = std::move(next);
    objective = next_objective;
    out.trace.push_back(objective);
    if (change < settings_.objective_tol) {
      out.converged = true;
      break;
    }
  }
  out.beamformer = Beamformer(current.vector);
  out.unscaled = std::move(current);
  out.objective = objective;
  return out;
}

}  // namespace otafl
