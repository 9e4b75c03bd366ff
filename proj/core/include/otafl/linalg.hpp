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

#ifndef OTAFL_LINALG_HPP_
#define OTAFL_LINALG_HPP_

#include <complex>

#include <Eigen/Dense>

namespace otafl {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Inner product a^H b.
inline Complex Inner(const CVector& a, const CVector& b) { return a.dot(b); }

// Beamforming gain |f^H h|^2.
inline double Gain(const CVector& f, const CVector& h) {
  return std::norm(f.dot(h));
}

}  // namespace otafl

#endif  // OTAFL_LINALG_HPP_
