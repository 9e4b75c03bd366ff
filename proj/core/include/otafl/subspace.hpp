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

#ifndef OTAFL_SUBSPACE_HPP_
#define OTAFL_SUBSPACE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "otafl/linalg.hpp"

namespace otafl {

// Orthonormal basis of span{h_1, ..., h_k} grown one vector at a time by
// modified Gram-Schmidt with one re-orthogonalization pass. Vectors that
// are numerically inside the current span do not grow the basis.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(std::size_t dimension, double rank_tol = 1e-10)
      : dimension_(dimension), rank_tol_(rank_tol) {}

  // Returns true when `v` enlarged the basis.
  bool Add(const CVector& v);

  // ||P v|| where P projects onto the current span. 0 for an empty basis.
  double ProjectionNorm(const CVector& v) const;

  std::size_t rank() const { return basis_.size(); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<CVector>& vectors() const { return basis_; }

 private:
  std::size_t dimension_;
  double rank_tol_;
  std::vector<CVector> basis_;
};

// ||Proj_span(basis)(candidate)||; empty basis gives 0.
double ProjectionNorm(const CVector& candidate,
                      std::span<const CVector> basis_channels);

}  // namespace otafl

#endif  // OTAFL_SUBSPACE_HPP_
