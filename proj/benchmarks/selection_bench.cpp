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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "otafl/beamforming.hpp"
#include "otafl/channel.hpp"
#include "otafl/config.hpp"
#include "otafl/selection.hpp"

namespace {

using namespace otafl;

struct Instance {
  std::vector<DeviceProfile> profiles;
  AggregationParams params;
};

// Physical channels at the default power and noise levels.
Instance MakeInstance(std::size_t devices, std::size_t antennas,
                      std::uint64_t seed) {
  const ExperimentConfig config = ParseConfig("");
  const RngStreams streams(seed);
  Rng geometry_rng = streams.Stream(StreamPurpose::kGeometry);
  Rng fading_rng = streams.Stream(StreamPurpose::kFading);
  const Geometry g = SampleDistances(devices, config.r_min_m, config.r_max_m,
                                     geometry_rng);
  const ChannelSet ch = SampleChannels(g, antennas, fading_rng);
  const std::vector<std::int64_t> sizes(devices, 300);
  Instance out;
  out.profiles = MakeProfiles(ch.channels, sizes);
  out.params = AggregationParams::For(out.profiles, config.power_limit_watts(),
                                      config.noise_power_watts());
  return out;
}

void BM_Gsds(benchmark::State& state) {
  const Instance in = MakeInstance(static_cast<std::size_t>(state.range(0)),
                                   static_cast<std::size_t>(state.range(1)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Gsds(in.profiles, in.params));
  }
}
BENCHMARK(BM_Gsds)->Args({20, 8})->Args({100, 16})->Unit(benchmark::kMillisecond);

void BM_Adsbf(benchmark::State& state) {
  const Instance in = MakeInstance(static_cast<std::size_t>(state.range(0)),
                                   static_cast<std::size_t>(state.range(1)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Adsbf(in.profiles, in.params));
  }
}
BENCHMARK(BM_Adsbf)->Args({20, 8})->Args({100, 16})->Args({200, 16})
    ->Unit(benchmark::kMillisecond);

void BM_MulticastSolve(benchmark::State& state) {
  const Instance in = MakeInstance(static_cast<std::size_t>(state.range(0)),
                                   static_cast<std::size_t>(state.range(1)), 11);
  MulticastSolver solver;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.Solve(in.profiles));
  }
}
BENCHMARK(BM_MulticastSolve)->Args({4, 8})->Args({20, 8})->Args({100, 16})
    ->Unit(benchmark::kMillisecond);

void BM_OptimalSelection(benchmark::State& state) {
  const Instance in = MakeInstance(static_cast<std::size_t>(state.range(0)), 16, 13);
  const Beamformer f(in.profiles.front().channel);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        OptimalSelectionGivenBeamformer(f, in.profiles, in.params));
  }
}
BENCHMARK(BM_OptimalSelection)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
