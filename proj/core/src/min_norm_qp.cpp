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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "otafl/errors.hpp"

namespace otafl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void MinNormQpSolver::Factor() {
  if (active_normals_.cols() > 0) qr_.compute(active_normals_);
}

void MinNormQpSolver::StepDirections(const RVector& normal, RVector& z,
                                     RVector& r) const {
  const Eigen::Index q = active_normals_.cols();
  if (q == 0) {
    z = normal;
    r.resize(0);
    return;
  }
  const Eigen::Index n = normal.size();
  RVector qt_n = qr_.householderQ().adjoint() * normal;
  r = qr_.matrixQR()
          .topLeftCorner(q, q)
          .triangularView<Eigen::Upper>()
          .solve(qt_n.head(q));
  RVector tail = RVector::Zero(n);
  tail.tail(n - q) = qt_n.tail(n - q);
  z = qr_.householderQ() * tail;
}

MinNormQpResult MinNormQpSolver::Solve(const RMatrix& a, const RVector& b) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != rows) throw ParameterError("QP: A and b sizes differ");

  // Row-normalized copy: slacks become distances in x-space.
  RMatrix na(rows, n);
  RVector nb(rows);
  RVector row_norm(rows);
  double scale = 0.0;
  for (Eigen::Index j = 0; j < rows; ++j) {
    row_norm[j] = a.row(j).norm();
    if (row_norm[j] > 0.0) {
      na.row(j) = a.row(j) / row_norm[j];
      nb[j] = b[j] / row_norm[j];
      scale = std::max(scale, std::abs(nb[j]));
    } else {
      if (b[j] > 0.0) throw SolverError("QP: infeasible zero-row constraint");
      na.row(j).setZero();
      nb[j] = 0.0;
    }
  }
  const double tol = options_.feasibility_tol * std::max(scale, 1e-300);
  const std::size_t budget =
      options_.max_iterations > 0
          ? options_.max_iterations
          : static_cast<std::size_t>(10 * (rows + n) + 50);

  RVector x = RVector::Zero(n);
  std::vector<std::size_t> active;
  std::vector<double> u;  // multipliers of `active`, normalized rows
  active_normals_.resize(n, 0);
  std::vector<char> is_active(static_cast<std::size_t>(rows), 0);
  std::size_t iterations = 0;

  auto rebuild = [&] {
    active_normals_.resize(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t c = 0; c < active.size(); ++c) {
      active_normals_.col(static_cast<Eigen::Index>(c)) =
          na.row(static_cast<Eigen::Index>(active[c])).transpose();
    }
    Factor();
  };
  auto drop = [&](std::size_t k) {
    is_active[active[k]] = 0;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(k));
    u.erase(u.begin() + static_cast<std::ptrdiff_t>(k));
    rebuild();
  };

  RVector z, r;
  while (true) {
    // Most violated inactive constraint; ties go to the lowest index.
    Eigen::Index p = -1;
    double worst = -tol;
    for (Eigen::Index j = 0; j < rows; ++j) {
      if (is_active[static_cast<std::size_t>(j)] || row_norm[j] == 0.0) continue;
      const double slack = na.row(j).dot(x) - nb[j];
      if (slack < worst) {
        worst = slack;
        p = j;
      }
    }
    if (p < 0) break;

    const RVector normal = na.row(p).transpose();
    double u_p = 0.0;
    while (true) {
      if (++iterations > budget) {
        throw SolverError("QP: iteration budget of " + std::to_string(budget) +
                          " exhausted");
      }
      StepDirections(normal, z, r);

      double t_dual = kInf;
      std::size_t block = 0;
      for (Eigen::Index c = 0; c < r.size(); ++c) {
        if (r[c] > 1e-14) {
          const double ratio = u[static_cast<std::size_t>(c)] / r[c];
          if (ratio < t_dual) {
            t_dual = ratio;
            block = static_cast<std::size_t>(c);
          }
        }
      }
      const double z_norm2 = z.squaredNorm();
      double t_primal = kInf;
      if (z_norm2 > 1e-24) {
        const double slack = normal.dot(x) - nb[p];
        t_primal = std::max(0.0, -slack / z.dot(normal));
      }
      const double t = std::min(t_dual, t_primal);
      if (std::isinf(t)) throw SolverError("QP: constraints are infeasible");

      for (std::size_t c = 0; c < u.size(); ++c) {
        u[c] = std::max(0.0, u[c] - t * r[static_cast<Eigen::Index>(c)]);
      }
      u_p += t;
      if (std::isinf(t_primal)) {
        // Dependent on the active set: only the dual moves.
        u[block] = 0.0;
        drop(block);
        continue;
      }
      x += t * z;
      if (t_primal <= t_dual) {
        active.push_back(static_cast<std::size_t>(p));
        u.push_back(u_p);
        is_active[static_cast<std::size_t>(p)] = 1;
        rebuild();
        break;
      }
      u[block] = 0.0;
      drop(block);
    }
  }

  MinNormQpResult result;
  result.x = x;
  result.iterations = iterations;
  result.active = active;
  result.multipliers = RVector::Zero(rows);
  RVector combo = RVector::Zero(n);
  for (std::size_t c = 0; c < active.size(); ++c) {
    const auto j = static_cast<Eigen::Index>(active[c]);
    result.multipliers[j] = u[c] / row_norm[j];
    combo += u[c] * na.row(j).transpose();
  }
  const double x_norm = x.norm();
  const double energy = std::max(x_norm * x_norm, 1e-300);
  for (Eigen::Index j = 0; j < rows; ++j) {
    if (row_norm[j] == 0.0) continue;
    const double slack = na.row(j).dot(x) - nb[j];
    result.max_violation =
        std::max(result.max_violation, -slack / std::max(scale, 1e-300));
    const double uj = result.multipliers[j] * row_norm[j];
    result.complementarity =
        std::max(result.complementarity, uj * std::abs(slack) / energy);
  }
  result.stationarity =
      (x - combo).lpNorm<Eigen::Infinity>() / std::max(x_norm, 1e-300);
  if (result.max_violation > options_.kkt_tol ||
      result.complementarity > options_.kkt_tol ||
      result.stationarity > options_.kkt_tol) {
    throw SolverError("QP: KKT residuals above tolerance (violation " +
                      std::to_string(result.max_violation) + ", compl " +
                      std::to_string(result.complementarity) + ", stat " +
                      std::to_string(result.stationarity) + ")");
  }
  return result;
}

}  // namespace otafl
