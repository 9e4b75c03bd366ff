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

#ifndef OTAFL_SELECTION_HPP_
#define OTAFL_SELECTION_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otafl/beamforming.hpp"
#include "otafl/objective.hpp"

namespace otafl {

enum class Method { kGsds, kAdsbf, kSelectAll, kTopOne };

std::string_view MethodName(Method method);
// Accepts "gsds", "adsbf", "select_all", "top_one". Throws ParameterError.
Method ParseMethod(std::string_view name);

// One GSDS step: the device added, its projection metric, the resulting
// set size and d value (+infinity when the beamforming solve failed).
struct GsdsStep {
  std::size_t device = 0;
  double metric = 0.0;
  std::size_t set_size = 0;
  double d_value = 0.0;
  double sca_objective = 0.0;
  bool solver_failed = false;
};

struct AdsbfIteration {
  double d_value = 0.0;
  std::size_t num_selected = 0;
  double sca_objective = 0.0;
};

struct SelectionDiagnostics {
  std::vector<GsdsStep> gsds_steps;
  std::size_t best_step = 0;  // i* - 1 for GSDS
  // ADSBF: d(f^(0), s^(0)) followed by d after every iteration.
  std::vector<double> d_trace;
  std::vector<AdsbfIteration> adsbf_iterations;
  std::size_t iterations = 0;
  bool converged = false;
  bool degraded = false;  // a solver error cut the run short
  std::string message;
};

struct SelectionOutcome {
  SelectionVector selection;
  Beamformer beamformer;
  double d_value = std::numeric_limits<double>::infinity();
  SelectionDiagnostics diagnostics;
};

struct AdsbfSettings {
  double eps = 1e-6;
  std::size_t max_iters = 10;  // J_max
};

// Greedy spatial device selection. Step 1 picks the strongest channel;
// step i adds the unselected device whose channel has the largest
// projection onto the span of the selected channels. Each step solves the
// multicast problem warm-started from the previous step's beamformer, and
// the step with the smallest d is returned.
SelectionOutcome Gsds(std::span<const DeviceProfile> profiles,
                      const AggregationParams& params,
                      const ScaSettings& sca = {});

// Exact minimizer of d(f, .) over nonempty selections for a fixed f:
// the best prefix of devices sorted ascending by K_m^2/|f^H h_m|^2.
// Ties are broken by lowest device index. Throws DomainError when every
// gain is zero.
SelectionVector OptimalSelectionGivenBeamformer(
    const Beamformer& f, std::span<const DeviceProfile> profiles,
    const AggregationParams& params);

// Alternating minimization over f (SCA, warm-started) and s (optimal
// prefix selection) starting from s = all devices and f = strongest
// channel direction.
SelectionOutcome Adsbf(std::span<const DeviceProfile> profiles,
                       const AggregationParams& params,
                       const ScaSettings& sca = {},
                       const AdsbfSettings& settings = {});

SelectionOutcome SelectAll(std::span<const DeviceProfile> profiles,
                           const AggregationParams& params,
                           const ScaSettings& sca = {});

// Single strongest device with a matched-filter beamformer.
SelectionOutcome TopOne(std::span<const DeviceProfile> profiles,
                        const AggregationParams& params);

SelectionOutcome RunMethod(Method method,
                           std::span<const DeviceProfile> profiles,
                           const AggregationParams& params,
                           const ScaSettings& sca = {},
                           const AdsbfSettings& adsbf = {});

}  // namespace otafl

#endif  // OTAFL_SELECTION_HPP_
