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

#include "otafl/subspace.hpp"

#include <cmath>

#include "otafl/errors.hpp"

namespace otafl {

bool IncrementalBasis::Add(const CVector& v) {
  if (static_cast<std::size_t>(v.size()) != dimension_) {
    throw ParameterError("basis vector has the wrong dimension");
  }
  const double v_norm = v.norm();
  if (v_norm == 0.0 || basis_.size() == dimension_) return false;
  CVector residual = v;
  for (int pass = 0; pass < 2; ++pass) {
    for (const CVector& q : basis_) residual -= q.dot(residual) * q;
  }
  const double r_norm = residual.norm();
  if (r_norm <= rank_tol_ * v_norm) return false;
  basis_.push_back(residual / r_norm);
  return true;
}

double IncrementalBasis::ProjectionNorm(const CVector& v) const {
  double sum = 0.0;
  for (const CVector& q : basis_) sum += std::norm(q.dot(v));
  return std::sqrt(sum);
}

double ProjectionNorm(const CVector& candidate,
                      std::span<const CVector> basis_channels) {
  IncrementalBasis basis(static_cast<std::size_t>(candidate.size()));
  for (const CVector& h : basis_channels) basis.Add(h);
  return basis.ProjectionNorm(candidate);
}

}  // namespace otafl
