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

#include "otafl/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "otafl/errors.hpp"
#include "otafl/subspace.hpp"

namespace otafl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckProfiles(std::span<const DeviceProfile> profiles) {
  if (profiles.empty()) throw ParameterError("need at least one device");
}

std::size_t StrongestDevice(std::span<const DeviceProfile> profiles) {
  std::size_t best = 0;
  double best_norm = profiles[0].channel.squaredNorm();
  for (std::size_t m = 1; m < profiles.size(); ++m) {
    const double norm = profiles[m].channel.squaredNorm();
    if (norm > best_norm) {
      best_norm = norm;
      best = m;
    }
  }
  return best;
}

std::vector<DeviceProfile> Subset(std::span<const DeviceProfile> profiles,
                                  const SelectionVector& s) {
  std::vector<DeviceProfile> out;
  out.reserve(s.Count());
  for (std::size_t m = 0; m < profiles.size(); ++m) {
    if (s[m]) out.push_back(profiles[m]);
  }
  return out;
}

SelectionOutcome Finish(SelectionVector s, Beamformer f,
                        std::span<const DeviceProfile> profiles,
                        const AggregationParams& params,
                        SelectionDiagnostics diagnostics) {
  SelectionOutcome out;
  out.d_value = ErrorMetric(f, s, profiles, params);
  out.selection = std::move(s);
  out.beamformer = std::move(f);
  out.diagnostics = std::move(diagnostics);
  return out;
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kGsds: return "gsds";
    case Method::kAdsbf: return "adsbf";
    case Method::kSelectAll: return "select_all";
    case Method::kTopOne: return "top_one";
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kGsds, Method::kAdsbf, Method::kSelectAll,
                   Method::kTopOne}) {
    if (MethodName(m) == name) return m;
  }
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

SelectionOutcome Gsds(std::span<const DeviceProfile> profiles,
                      const AggregationParams& params,
                      const ScaSettings& sca) {
  CheckProfiles(profiles);
  const std::size_t num_devices = profiles.size();
  MulticastSolver solver(sca);
  IncrementalBasis basis(
      static_cast<std::size_t>(profiles[0].channel.size()));

  SelectionDiagnostics diag;
  diag.gsds_steps.reserve(num_devices);
  SelectionVector current(num_devices);
  std::vector<DeviceProfile> chosen;
  chosen.reserve(num_devices);
  std::optional<CVector> warm;

  double best_d = kInf;
  SelectionVector best_s;
  std::optional<Beamformer> best_f;

  for (std::size_t step = 0; step < num_devices; ++step) {
    std::size_t pick = num_devices;
    double metric = -1.0;
    for (std::size_t m = 0; m < num_devices; ++m) {
      if (current[m]) continue;
      const double value = step == 0 ? profiles[m].channel.norm()
                                     : basis.ProjectionNorm(profiles[m].channel);
      if (value > metric) {
        metric = value;
        pick = m;
      }
    }
    current.Set(pick, true);
    chosen.push_back(profiles[pick]);
    basis.Add(profiles[pick].channel);

    GsdsStep record{pick, metric, step + 1, kInf, kInf, false};
    try {
      MulticastSolution sol = solver.Solve(chosen, warm);
      warm = sol.unscaled.vector;
      record.sca_objective = sol.objective;
      record.d_value = ErrorMetric(sol.beamformer, current, profiles, params);
      if (record.d_value < best_d) {
        best_d = record.d_value;
        best_s = current;
        best_f = sol.beamformer;
        diag.best_step = step;
      }
    } catch (const SolverError& e) {
      record.solver_failed = true;
      diag.message = e.what();
    } catch (const DomainError& e) {
      record.solver_failed = true;
      diag.message = e.what();
    }
    diag.gsds_steps.push_back(record);
  }
  diag.iterations = num_devices;
  diag.converged = best_f.has_value();
  if (!best_f) {
    // Every beamforming solve failed: fall back to the first greedy pick.
    diag.degraded = true;
    const std::size_t first = diag.gsds_steps.front().device;
    return Finish(SelectionVector::FromIndices(num_devices, {&first, 1}),
                  Beamformer(profiles[first].channel), profiles, params,
                  std::move(diag));
  }
  return Finish(std::move(best_s), std::move(*best_f), profiles, params,
                std::move(diag));
}

SelectionVector OptimalSelectionGivenBeamformer(
    const Beamformer& f, std::span<const DeviceProfile> profiles,
    const AggregationParams& params) {
  CheckProfiles(profiles);
  const std::size_t num_devices = profiles.size();
  std::vector<double> ratio(num_devices);
  bool any_finite = false;
  for (std::size_t m = 0; m < num_devices; ++m) {
    const double gain = f.Gain(profiles[m].channel);
    const double k = static_cast<double>(profiles[m].dataset_size);
    ratio[m] = gain > 0.0 ? k * k / gain : kInf;
    any_finite = any_finite || gain > 0.0;
  }
  if (!any_finite) throw DomainError("beamformer has zero gain to every device");

  std::vector<std::size_t> order(num_devices);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratio[a] < ratio[b]; });

  const double total = params.total_samples;
  const double noise_scale = params.noise_power / params.power_limit;
  double prefix_samples = 0.0;
  double best_d = kInf;
  std::size_t best_len = 1;
  for (std::size_t j = 0; j < num_devices; ++j) {
    const std::size_t m = order[j];
    if (std::isinf(ratio[m])) break;
    prefix_samples += static_cast<double>(profiles[m].dataset_size);
    const double excluded = total - prefix_samples;
    const double d = 4.0 * excluded * excluded / (total * total) +
                     noise_scale / (prefix_samples * prefix_samples) * ratio[m];
    if (d < best_d) {
      best_d = d;
      best_len = j + 1;
    }
  }
  SelectionVector s(num_devices);
  for (std::size_t j = 0; j < best_len; ++j) s.Set(order[j], true);
  return s;
}

SelectionOutcome Adsbf(std::span<const DeviceProfile> profiles,
                       const AggregationParams& params,
                       const ScaSettings& sca, const AdsbfSettings& settings) {
  CheckProfiles(profiles);
  if (settings.max_iters < 1) throw ParameterError("J_max must be >= 1");
  const std::size_t num_devices = profiles.size();

  SelectionDiagnostics diag;
  SelectionVector s = SelectionVector::All(num_devices);
  Beamformer f(profiles[StrongestDevice(profiles)].channel);
  double d = ErrorMetric(f, s, profiles, params);
  diag.d_trace.push_back(d);

  for (std::size_t l = 0; l < settings.max_iters; ++l) {
    // A relative SCA change r moves d by r times its noise term; tighten the
    // inner tolerance so the inner solve is at least as accurate as eps.
    ScaSettings inner = sca;
    const double noise_term = d - ExclusionTerm(s, profiles, params);
    if (noise_term > 0.0 && std::isfinite(noise_term)) {
      inner.objective_tol =
          std::max(std::min(sca.objective_tol, settings.eps / noise_term), 1e-15);
    }
    MulticastSolver solver(inner);
    MulticastSolution sol;
    try {
      sol = solver.Solve(Subset(profiles, s), f.vector());
    } catch (const SolverError& e) {
      diag.degraded = true;
      diag.message = e.what();
      break;
    } catch (const DomainError& e) {
      diag.degraded = true;
      diag.message = e.what();
      break;
    }
    SelectionVector next_s =
        OptimalSelectionGivenBeamformer(sol.beamformer, profiles, params);
    const double next_d = ErrorMetric(sol.beamformer, next_s, profiles, params);
    ++diag.iterations;
    if (!(next_d <= d)) {
      // Only reachable through round-off; the previous iterate stands.
      diag.converged = true;
      break;
    }
    const double change = d - next_d;
    f = sol.beamformer;
    s = std::move(next_s);
    d = next_d;
    diag.d_trace.push_back(d);
    diag.adsbf_iterations.push_back({d, s.Count(), sol.objective});
    if (change <= settings.eps) {
      diag.converged = true;
      break;
    }
  }
  return Finish(std::move(s), std::move(f), profiles, params, std::move(diag));
}

SelectionOutcome SelectAll(std::span<const DeviceProfile> profiles,
                           const AggregationParams& params,
                           const ScaSettings& sca) {
  CheckProfiles(profiles);
  MulticastSolver solver(sca);
  MulticastSolution sol = solver.Solve(profiles);
  SelectionDiagnostics diag;
  diag.iterations = sol.iterations;
  diag.converged = sol.converged;
  return Finish(SelectionVector::All(profiles.size()), sol.beamformer, profiles,
                params, std::move(diag));
}

SelectionOutcome TopOne(std::span<const DeviceProfile> profiles,
                        const AggregationParams& params) {
  CheckProfiles(profiles);
  const std::size_t best = StrongestDevice(profiles);
  SelectionDiagnostics diag;
  diag.converged = true;
  return Finish(SelectionVector::FromIndices(profiles.size(), {&best, 1}),
                Beamformer(profiles[best].channel), profiles, params,
                std::move(diag));
}

SelectionOutcome RunMethod(Method method,
                           std::span<const DeviceProfile> profiles,
                           const AggregationParams& params,
                           const ScaSettings& sca, const AdsbfSettings& adsbf) {
  switch (method) {
    case Method::kGsds: return Gsds(profiles, params, sca);
    case Method::kAdsbf: return Adsbf(profiles, params, sca, adsbf);
    case Method::kSelectAll: return SelectAll(profiles, params, sca);
    case Method::kTopOne: return TopOne(profiles, params);
  }
  throw ParameterError("unknown method");
}

}  // namespace otafl
