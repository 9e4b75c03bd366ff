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

// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "otafl/aggregation.hpp"
#include "otafl/beamforming.hpp"
#include "otafl/channel.hpp"
#include "otafl/config.hpp"
#include "otafl/experiment.hpp"
#include "otafl/logistic.hpp"
#include "otafl/selection.hpp"
#include "otafl/training.hpp"

namespace otafl {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::vector<int> Bits(const SelectionVector& s) {
  std::vector<int> out(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) out[m] = s[m];
  return out;
}

// Desk-scale scenario shared by the learning and selection criteria.
ExperimentConfig DeskScenario() {
  ExperimentConfig c = ParseConfig("profile = desk\n");
  c.noise_dbm = -47.5;
  c.samples_per_device = 30;
  c.rounds = 100;
  c.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  return c;
}

Verdict Ac1SelectionOptimality() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> m_dist(2, 12), n_dist(1, 6);
  std::uniform_real_distribution<double> log_noise(-8.0, -2.0);
  int exact = 0;
  double worst = 0;
  const int instances = 200;
  for (int i = 0; i < instances; ++i) {
    const auto m = static_cast<std::size_t>(m_dist(rng));
    const auto n = static_cast<std::size_t>(n_dist(rng));
    const auto p = testing::RandomProfiles(rng, m, n);
    const double noise = std::pow(10.0, log_noise(rng));
    const auto params = AggregationParams::For(p, 1e-3, noise);
    const CVector f = testing::RandomUnit(rng, n);
    const auto s = OptimalSelectionGivenBeamformer(Beamformer(f), p, params);
    const double got = ErrorMetric(Beamformer(f), s, p, params);
    const double best = testing::BruteForceBestD(f, p, noise, 1e-3);
    const double rel = std::abs(got - best) / best;
    worst = std::max(worst, rel);
    if (rel <= 1e-10) ++exact;
  }
  const double secs = Seconds(start);
  return {exact == instances && secs < 60.0,
          Format("%d/%d instances match brute force (worst rel %.2e), %.2f s",
                 exact, instances, worst, secs)};
}

Verdict Ac2NoiselessAggregation() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> m_dist(1, 8), n_dist(1, 6);
  double worst = 0;
  const int rounds = 50;
  for (int r = 0; r < rounds; ++r) {
    const auto m = static_cast<std::size_t>(m_dist(rng));
    const auto n = static_cast<std::size_t>(n_dist(rng));
    auto p = testing::RandomProfiles(rng, m, n, 60.0, 10, 300);
    // Physical channel scale.
    for (auto& d : p) d.channel *= 1e-4;
    const auto params = AggregationParams::For(p, 1e-3, 0.0);
    const Beamformer f(testing::RandomUnit(rng, n));
    const Dataset data = testing::RandomDataset(rng, 40, 5, 4);
    std::normal_distribution<double> normal;
    RVector w(4 * 6);
    for (auto& v : w) v = normal(rng);
    const SoftmaxModel model(4, 5, w);
    std::vector<GradientMessage> msgs;
    RVector exact = RVector::Zero(w.size());
    double total = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::size_t> rows;
      for (std::size_t k = i; k < data.size(); k += m) rows.push_back(k);
      RVector g = model.Gradient(data, rows);
      const double k = static_cast<double>(p[i].dataset_size);
      exact += k * g;
      total += k;
      msgs.push_back(GradientMessage::FromGradient(std::move(g)));
    }
    Rng noise(static_cast<std::uint64_t>(r));
    const auto agg = OtaAggregate(msgs, f, p, params, noise);
    const double lr = 0.05;
    const RVector via_air = w - (lr / total) * agg.estimate;
    const RVector fedsgd = w - (lr / total) * exact;
    worst = std::max(worst, (via_air - fedsgd).lpNorm<Eigen::Infinity>());
  }
  return {worst < 1e-9,
          Format("%d rounds, max per-coordinate error %.2e", rounds, worst)};
}

Verdict Ac3PowerConstraint() {
  ExperimentConfig c = DeskScenario();
  c.rounds = 30;
  c.seeds = {1, 2, 3};
  c.round_mode = RoundMode::kPerRound;
  std::size_t rounds = 0, violations = 0;
  double worst_binding = 0;
  for (std::uint64_t seed : c.seeds) {
    const Federation fed = BuildFederation(c, seed);
    const double p0 = fed.power_limit;
    for (Method method : c.methods) {
      Trainer trainer(fed, MakeTrainingConfig(c, method), RngStreams(seed));
      trainer.set_observer([&](std::size_t, const SelectionOutcome&,
                               const AggregateResult& agg) {
        ++rounds;
        double max_power = 0;
        for (const Complex& a : agg.weights) {
          max_power = std::max(max_power, std::norm(a));
          if (std::norm(a) > p0) ++violations;
        }
        worst_binding = std::max(worst_binding, std::abs(max_power - p0) / p0);
      });
      trainer.Run();
    }
  }
  return {violations == 0 && worst_binding <= 1e-9,
          Format("%zu rounds, %zu weights above P0, worst |max|a|^2 - P0|/P0 %.2e",
                 rounds, violations, worst_binding)};
}

Verdict Ac4ScaCorrectness() {
  std::mt19937_64 rng(404);
  MulticastSolver solver;
  bool monotone = true;
  auto check_trace = [&](const MulticastSolution& sol) {
    for (std::size_t k = 1; k < sol.trace.size(); ++k) {
      if (sol.trace[k] > sol.trace[k - 1]) monotone = false;
    }
  };

  double single_err = 0;
  for (int i = 0; i < 20; ++i) {
    const auto p = testing::RandomProfiles(rng, 1, 1 + i % 6);
    const auto sol = solver.Solve(p);
    check_trace(sol);
    const double k = static_cast<double>(p[0].dataset_size);
    const double closed = k * k / p[0].channel.squaredNorm();
    single_err = std::max(single_err, std::abs(sol.objective - closed) / closed);
  }

  double scalar_err = 0;
  for (int i = 0; i < 20; ++i) {
    const auto p = testing::RandomProfiles(rng, 2 + i % 5, 1);
    const auto sol = solver.Solve(p);
    check_trace(sol);
    double closed = 0;
    for (const auto& d : p) {
      const double k = static_cast<double>(d.dataset_size);
      closed = std::max(closed, k * k / std::norm(d.channel[0]));
    }
    scalar_err = std::max(scalar_err, std::abs(sol.objective - closed) / closed);
  }

  int within = 0;
  double worst_gap = 0;
  for (int i = 0; i < 20; ++i) {
    const auto p = testing::RandomProfiles(rng, 4, 2);
    const auto sol = solver.Solve(p);
    check_trace(sol);
    const double grid = testing::GridSearchN2(p);
    const double gap = (sol.objective - grid) / grid;
    worst_gap = std::max(worst_gap, gap);
    if (gap <= 0.01) ++within;
  }

  for (int i = 0; i < 50; ++i) {
    const auto p = testing::RandomProfiles(rng, 2 + i % 10, 1 + i % 8);
    check_trace(solver.Solve(p));
    check_trace(solver.Solve(p, testing::RandomUnit(rng, 1 + i % 8)));
  }

  const bool pass =
      single_err <= 1e-6 && scalar_err <= 1e-6 && within == 20 && monotone;
  return {pass, Format("single-device rel err %.1e, N=1 rel err %.1e, N=2 grid "
                       "%d/20 within 1%% (worst %+.2e), traces %s",
                       single_err, scalar_err, within, worst_gap,
                       monotone ? "monotone" : "NOT monotone")};
}

Verdict Ac5AdsbfConvergence() {
  const ExperimentConfig c = DeskScenario();
  const AdsbfSettings settings{1e-6, 10};
  int monotone = 0, terminated = 0;
  const int instances = 100;
  for (int i = 0; i < instances; ++i) {
    const RngStreams streams(1000 + static_cast<std::uint64_t>(i));
    Rng geo = streams.Stream(StreamPurpose::kGeometry);
    Rng fading = streams.Stream(StreamPurpose::kFading);
    const Geometry g = SampleDistances(20, c.r_min_m, c.r_max_m, geo);
    const ChannelSet ch = SampleChannels(g, 8, fading);
    const std::vector<std::int64_t> sizes(20, 30);
    const auto p = MakeProfiles(ch.channels, sizes);
    const auto params =
        AggregationParams::For(p, c.power_limit_watts(), c.noise_power_watts());
    const auto out = Adsbf(p, params, {}, settings);
    const auto& trace = out.diagnostics.d_trace;
    bool ok = true;
    for (std::size_t k = 1; k < trace.size(); ++k) ok = ok && trace[k] <= trace[k - 1];
    monotone += ok;
    terminated += out.diagnostics.converged &&
                  out.diagnostics.iterations <= settings.max_iters;
  }
  return {monotone == instances && terminated >= 95,
          Format("d trace non-increasing on %d/%d, converged within J_max on %d/%d",
                 monotone, instances, terminated, instances)};
}

double FinalColumn(const std::filesystem::path& csv, int column) {
  std::ifstream in(csv);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  std::vector<double> cols;
  std::stringstream ss(last);
  std::string cell;
  while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
  return cols.at(static_cast<std::size_t>(column));
}

Verdict Ac6DeskOrdering(const std::filesystem::path& work) {
  const auto start = Clock::now();
  const ExperimentConfig c = DeskScenario();
  const auto result = RunExperiment(c, work / "ac6");
  const double secs = Seconds(start);

  auto mean_acc = [&](Method m) {
    double sum = 0;
    for (const auto& run : result.runs) {
      if (run.method == m) sum += run.trace.back().test_accuracy;
    }
    return sum / static_cast<double>(c.seeds.size());
  };
  const double gsds = mean_acc(Method::kGsds), adsbf = mean_acc(Method::kAdsbf);
  const double all = mean_acc(Method::kSelectAll), top = mean_acc(Method::kTopOne);
  const bool ordered = gsds >= adsbf && adsbf >= std::max(all, top);

  // Final d per seed, read back from the CSV files.
  int gsds_below = 0, adsbf_below = 0, gsds_clear = 0, adsbf_clear = 0;
  for (std::uint64_t seed : c.seeds) {
    const auto dir = work / "ac6";
    const double d_all = FinalColumn(dir / CsvFileName(Method::kSelectAll, seed), 3);
    const double d_g = FinalColumn(dir / CsvFileName(Method::kGsds, seed), 3);
    const double d_a = FinalColumn(dir / CsvFileName(Method::kAdsbf, seed), 3);
    gsds_below += d_g < d_all;
    adsbf_below += d_a < d_all;
    gsds_clear += d_g < d_all * (1 - 1e-4);
    adsbf_clear += d_a < d_all * (1 - 1e-4);
  }
  const int seeds = static_cast<int>(c.seeds.size());
  const bool d_ok = gsds_below * 10 >= 9 * seeds && adsbf_below * 10 >= 9 * seeds;
  return {ordered && d_ok && secs < 600.0,
          Format("acc gsds %.3f adsbf %.3f select_all %.3f top_one %.3f; "
                 "d below select_all gsds %d/%d adsbf %d/%d (by >1e-4 rel: %d, %d); %.1f s",
                 gsds, adsbf, all, top, gsds_below, seeds, adsbf_below, seeds,
                 gsds_clear, adsbf_clear, secs)};
}

Verdict Ac7SelectedCounts() {
  ExperimentConfig c = DeskScenario();
  const int draws = 20;
  double count[4] = {0, 0, 0, 0};
  const Method methods[4] = {Method::kGsds, Method::kAdsbf, Method::kSelectAll,
                             Method::kTopOne};
  for (int i = 0; i < draws; ++i) {
    const Federation fed = BuildFederation(c, 500 + static_cast<std::uint64_t>(i));
    const auto p = fed.Profiles(fed.channels);
    const auto params = fed.Params();
    for (int k = 0; k < 4; ++k) {
      count[k] += static_cast<double>(RunMethod(methods[k], p, params).selection.Count());
    }
  }
  for (double& v : count) v /= draws;
  const double lo = count[3], hi = count[2];
  const bool pass = count[0] > lo && count[0] < hi && count[1] > lo && count[1] < hi;
  return {pass, Format("mean selected: gsds %.2f adsbf %.2f select_all %.2f top_one %.2f",
                       count[0], count[1], count[2], count[3])};
}

Verdict Ac8RuntimeOrdering() {
  ExperimentConfig c;
  c.num_devices = 100;
  c.num_antennas = 16;
  int faster = 0;
  double gsds_ms = 0, adsbf_ms = 0;
  const int draws = 10;
  for (int i = 0; i < draws; ++i) {
    const RngStreams streams(800 + static_cast<std::uint64_t>(i));
    Rng geo = streams.Stream(StreamPurpose::kGeometry);
    Rng fading = streams.Stream(StreamPurpose::kFading);
    const Geometry g = SampleDistances(c.num_devices, c.r_min_m, c.r_max_m, geo);
    const ChannelSet ch = SampleChannels(g, c.num_antennas, fading);
    const std::vector<std::int64_t> sizes(c.num_devices, 300);
    const auto p = MakeProfiles(ch.channels, sizes);
    const auto params =
        AggregationParams::For(p, c.power_limit_watts(), c.noise_power_watts());
    auto t0 = Clock::now();
    Gsds(p, params);
    const double tg = Seconds(t0) * 1e3;
    t0 = Clock::now();
    Adsbf(p, params);
    const double ta = Seconds(t0) * 1e3;
    gsds_ms += tg / draws;
    adsbf_ms += ta / draws;
    faster += ta < tg;
  }
  return {faster * 10 >= 9 * draws,
          Format("ADSBF faster on %d/%d draws (mean %.2f ms vs GSDS %.2f ms)",
                 faster, draws, adsbf_ms, gsds_ms)};
}

Verdict Ac9GradientCheck() {
  std::mt19937_64 rng(909);
  std::normal_distribution<double> normal;
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const int classes = 2 + i % 4;
    const std::size_t b = 2 + static_cast<std::size_t>(i % 5);
    const Dataset data = testing::RandomDataset(rng, 20, b, classes);
    RVector w(classes * static_cast<Eigen::Index>(b + 1));
    for (auto& v : w) v = normal(rng);
    const RVector analytic = SoftmaxModel(classes, b, w).Gradient(data);
    const RVector numeric = testing::CentralDifferences(
        [&](const Eigen::VectorXd& x) { return testing::OracleLoss(x, data); }, w, 1e-5);
    worst = std::max(worst, (analytic - numeric).lpNorm<Eigen::Infinity>() /
                                numeric.lpNorm<Eigen::Infinity>());
  }
  return {worst < 1e-5, Format("max relative error %.2e over 10 instances", worst)};
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// CSV text with the wall_ms column removed.
std::string WithoutWallColumn(const std::string& csv) {
  std::stringstream in(csv), out;
  std::string line;
  while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

Verdict Ac10Determinism(const std::filesystem::path& work) {
  ExperimentConfig c = DeskScenario();
  c.rounds = 25;
  c.seeds = {3, 4};
  c.round_mode = RoundMode::kPerRound;
  c.batch_size = 10;
  c.workers = 2;
  int identical = 0, total = 0, stable_columns = 0;
  const auto a = RunExperiment(c, work / "ac10a");
  const auto b = RunExperiment(c, work / "ac10b");
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    ++total;
    identical += Slurp(a.runs[i].csv_path) == Slurp(b.runs[i].csv_path);
  }
  // With wall-clock timing enabled only the wall_ms column may differ.
  c.wall_clock = true;
  const auto timed = RunExperiment(c, work / "ac10c");
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    stable_columns += WithoutWallColumn(Slurp(a.runs[i].csv_path)) ==
                      WithoutWallColumn(Slurp(timed.runs[i].csv_path));
  }
  return {identical == total && stable_columns == total,
          Format("%d/%d CSVs byte-identical on re-run; %d/%d identical outside "
                 "wall_ms with timing on",
                 identical, total, stable_columns, total)};
}

}  // namespace
}  // namespace otafl

int main() {
  using namespace otafl;
  const auto work = std::filesystem::temp_directory_path() / "otafl_acceptance";
  std::filesystem::remove_all(work);
  std::filesystem::create_directories(work);

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1 exact selection optimality", Ac1SelectionOptimality},
      {"AC2 noiseless aggregation identity", Ac2NoiselessAggregation},
      {"AC3 power constraint", Ac3PowerConstraint},
      {"AC4 SCA correctness", Ac4ScaCorrectness},
      {"AC5 ADSBF convergence", Ac5AdsbfConvergence},
      {"AC6 desk-scale ordering", [&] { return Ac6DeskOrdering(work); }},
      {"AC7 selected-count behavior", Ac7SelectedCounts},
      {"AC8 runtime ordering", Ac8RuntimeOrdering},
      {"AC9 gradient correctness", Ac9GradientCheck},
      {"AC10 determinism", [&] { return Ac10Determinism(work); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::filesystem::remove_all(work);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
