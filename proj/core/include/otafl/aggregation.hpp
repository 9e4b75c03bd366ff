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

#ifndef OTAFL_AGGREGATION_HPP_
#define OTAFL_AGGREGATION_HPP_

#include <limits>
#include <span>
#include <vector>

#include "otafl/linalg.hpp"
#include "otafl/objective.hpp"
#include "otafl/random.hpp"

namespace otafl {

// A local gradient and its normalizer v = ||g|| / sqrt(D).
struct GradientMessage {
  RVector gradient;
  double normalizer = 0.0;

  static GradientMessage FromGradient(RVector gradient);
};

struct AggregateResult {
  RVector estimate;                // Re[r_hat], one entry per channel use
  double scaling = 0.0;            // eta
  std::vector<Complex> weights;    // a_m, aligned with the selected profiles
};

// eta = min_m P0 |f^H h_m|^2 / (K_m^2 v_m^2) over devices with v_m > 0.
// Devices with a zero gradient send nothing and do not constrain eta.
// Throws DomainError on a zero gain for a transmitting device, on a
// negative normalizer, or when no device transmits.
double ReceiveScaling(const Beamformer& f,
                      std::span<const DeviceProfile> selected,
                      std::span<const double> normalizers,
                      double power_limit);

// a_m = sqrt(eta) K_m v_m / (f^H h_m); zero for v_m = 0. A weight that
// exceeds power_limit by round-off is shrunk onto it.
std::vector<Complex> TransmitWeights(
    const Beamformer& f, double eta, std::span<const DeviceProfile> selected,
    std::span<const double> normalizers,
    double power_limit = std::numeric_limits<double>::infinity());

// Simulates D channel uses of analog superposition:
//   y_d = sum_m h_m a_m g_m[d] / v_m + n_d,  n_d ~ CN(0, sigma^2 I_N)
// and returns Re[f^H y_d / sqrt(eta)]. Noise is drawn for every entry even
// when sigma^2 = 0 so the noise stream position does not depend on the
// noise level. When every gradient is zero the receiver scaling falls back
// to unit normalizers.
AggregateResult OtaAggregate(std::span<const GradientMessage> messages,
                             const Beamformer& f,
                             std::span<const DeviceProfile> selected,
                             const AggregationParams& params, Rng& rng);

}  // namespace otafl

#endif  // OTAFL_AGGREGATION_HPP_
