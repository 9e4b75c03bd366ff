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

#include "otafl/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otafl/errors.hpp"

namespace otafl {

GradientMessage GradientMessage::FromGradient(RVector gradient) {
  GradientMessage msg;
  const double dim = static_cast<double>(gradient.size());
  msg.normalizer = dim > 0 ? gradient.norm() / std::sqrt(dim) : 0.0;
  msg.gradient = std::move(gradient);
  return msg;
}

double ReceiveScaling(const Beamformer& f,
                      std::span<const DeviceProfile> selected,
                      std::span<const double> normalizers,
                      double power_limit) {
  if (selected.size() != normalizers.size()) {
    throw ParameterError("one normalizer per selected device required");
  }
  double eta = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const double v = normalizers[i];
    if (v < 0.0 || !std::isfinite(v)) throw DomainError("invalid normalizer");
    if (v == 0.0) continue;
    const double gain = f.Gain(selected[i].channel);
    if (gain == 0.0) throw DomainError("zero beamforming gain");
    const double k = static_cast<double>(selected[i].dataset_size);
    eta = std::min(eta, power_limit * gain / (k * k * v * v));
    any = true;
  }
  if (!any) throw DomainError("no device transmits a nonzero gradient");
  return eta;
}

std::vector<Complex> TransmitWeights(const Beamformer& f, double eta,
                                     std::span<const DeviceProfile> selected,
                                     std::span<const double> normalizers,
                                     double power_limit) {
  if (selected.size() != normalizers.size()) {
    throw ParameterError("one normalizer per selected device required");
  }
  std::vector<Complex> weights(selected.size(), Complex{0.0, 0.0});
  const double root_eta = std::sqrt(eta);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (normalizers[i] == 0.0) continue;
    const Complex gain = f.vector().dot(selected[i].channel);
    if (gain == Complex{0.0, 0.0}) throw DomainError("zero beamforming gain");
    const double k = static_cast<double>(selected[i].dataset_size);
    weights[i] = root_eta * k * normalizers[i] / gain;
    while (std::norm(weights[i]) > power_limit) {
      weights[i] *= 1.0 - std::numeric_limits<double>::epsilon();
    }
  }
  return weights;
}

AggregateResult OtaAggregate(std::span<const GradientMessage> messages,
                             const Beamformer& f,
                             std::span<const DeviceProfile> selected,
                             const AggregationParams& params, Rng& rng) {
  if (messages.size() != selected.size()) {
    throw ParameterError("one gradient message per selected device required");
  }
  if (messages.empty()) throw DomainError("no selected devices");
  const Eigen::Index dim = messages.front().gradient.size();
  std::vector<double> normalizers;
  normalizers.reserve(messages.size());
  bool any_signal = false;
  for (const auto& msg : messages) {
    if (msg.gradient.size() != dim) {
      throw ParameterError("gradient dimensions differ across devices");
    }
    normalizers.push_back(msg.normalizer);
    any_signal = any_signal || msg.normalizer > 0.0;
  }

  AggregateResult out;
  if (any_signal) {
    out.scaling = ReceiveScaling(f, selected, normalizers, params.power_limit);
  } else {
    const std::vector<double> ones(messages.size(), 1.0);
    out.scaling = ReceiveScaling(f, selected, ones, params.power_limit);
  }
  out.weights = TransmitWeights(f, out.scaling, selected, normalizers,
                                params.power_limit);

  // f^H y_d = sum_m (f^H h_m) a_m g_m[d] / v_m + f^H n_d.
  std::vector<Complex> effective(messages.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (normalizers[i] == 0.0) continue;
    effective[i] =
        f.vector().dot(selected[i].channel) * out.weights[i] / normalizers[i];
  }
  const CVector& fv = f.vector();
  const Eigen::Index antennas = fv.size();
  const double inv_root_eta = 1.0 / std::sqrt(out.scaling);
  out.estimate.resize(dim);
  CVector noise(antennas);
  for (Eigen::Index d = 0; d < dim; ++d) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < messages.size(); ++i) {
      acc += effective[i] * messages[i].gradient[d];
    }
    for (Eigen::Index a = 0; a < antennas; ++a) {
      noise[a] = ComplexGaussian(rng, params.noise_power);
    }
    acc += fv.dot(noise);
    out.estimate[d] = (acc * inv_root_eta).real();
  }
  return out;
}

}  // namespace otafl
