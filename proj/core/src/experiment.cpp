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

#include "otafl/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include "otafl/channel.hpp"
#include "otafl/errors.hpp"
#include "otafl/idx.hpp"

namespace otafl {
namespace {

std::string FormatReal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

Dataset TakeFirst(const Dataset& data, std::size_t n) {
  if (n >= data.size()) return data;
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return data.Subset(rows);
}

nlohmann::json CiJson(const MeanCi& ci) {
  return {{"mean", ci.mean}, {"ci95", ci.half_width}};
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw ParameterError("failed writing " + path.string());
}

}  // namespace

Federation BuildFederation(const ExperimentConfig& config,
                           std::uint64_t seed) {
  config.Validate();
  const RngStreams streams(seed);
  const std::size_t m = config.num_devices;
  const std::size_t k = config.samples_per_device;

  Federation fed;
  fed.power_limit = config.power_limit_watts();
  fed.noise_power = config.noise_power_watts();

  Rng geometry_rng = streams.Stream(StreamPurpose::kGeometry);
  const Geometry geometry =
      SampleDistances(m, config.r_min_m, config.r_max_m, geometry_rng);
  fed.path_loss_linear.reserve(m);
  for (double d : geometry.distances) {
    fed.path_loss_linear.push_back(DbToLinear(PathLossDb(d)));
  }
  Rng fading_rng = streams.Stream(StreamPurpose::kFading, 0);
  fed.channels = SampleChannelsFromLoss(fed.path_loss_linear,
                                        config.num_antennas, fading_rng,
                                        config.round_mode);

  Dataset pool;
  if (config.dataset == DatasetKind::kSynthetic) {
    Rng data_rng = streams.Stream(StreamPurpose::kData);
    GaussianClustersSpec spec;
    spec.num_classes = config.num_classes;
    spec.feature_dim = config.feature_dim;
    spec.separation = config.class_separation;
    const auto clusters = GaussianClusters::Create(spec, data_rng);
    const auto classes = static_cast<std::size_t>(config.num_classes);
    const std::size_t per_class = (k + classes - 1) / classes;
    pool = clusters.Sample(m * per_class * classes, data_rng);
    fed.test_data = clusters.Sample(config.test_samples, data_rng);
  } else {
    pool = idx::Load(config.idx_train_images, config.idx_train_labels);
    fed.test_data = TakeFirst(
        idx::Load(config.idx_test_images, config.idx_test_labels),
        config.test_samples);
  }
  Rng partition_rng = streams.Stream(StreamPurpose::kPartition);
  fed.local_data = PartitionIid(pool, m, k, partition_rng);
  return fed;
}

TrainingConfig MakeTrainingConfig(const ExperimentConfig& config,
                                  Method method) {
  TrainingConfig t;
  t.learning_rate = config.learning_rate;
  t.rounds = config.rounds;
  t.batch_size = config.batch_size;
  t.method = method;
  t.round_mode = config.round_mode;
  t.sca.max_iters = config.sca_max_iters;
  t.sca.objective_tol = config.sca_tol;
  t.sca.restarts = config.sca_restarts;
  t.adsbf.eps = config.adsbf_eps;
  t.adsbf.max_iters = config.adsbf_max_iters;
  return t;
}

std::string CsvFileName(Method method, std::uint64_t seed) {
  return std::string(MethodName(method)) + "_seed" + std::to_string(seed) +
         ".csv";
}

std::string FormatCsv(const TrainingTrace& trace, bool wall_clock) {
  std::string out = "round,test_loss,test_accuracy,d_value,num_selected,wall_ms\n";
  for (const RoundMetrics& r : trace) {
    out += std::to_string(r.round + 1);
    out += ',' + FormatReal(r.test_loss);
    out += ',' + FormatReal(r.test_accuracy);
    out += ',' + FormatReal(r.d_value);
    out += ',' + std::to_string(r.num_selected);
    out += ',' + FormatReal(wall_clock ? r.wall_ms : 0.0);
    out += '\n';
  }
  return out;
}

MeanCi MeanWithCi(const std::vector<double>& values) {
  MeanCi out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  out.half_width = boost::math::quantile(dist, 0.975) * sd / std::sqrt(n);
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const std::filesystem::path& out_dir) {
  config.Validate();
  std::filesystem::create_directories(out_dir);

  std::vector<Federation> federations;
  federations.reserve(config.seeds.size());
  for (std::uint64_t seed : config.seeds) {
    federations.push_back(BuildFederation(config, seed));
  }

  ExperimentResult result;
  for (Method method : config.methods) {
    for (std::uint64_t seed : config.seeds) {
      result.runs.push_back({method, seed, {}, out_dir / CsvFileName(method, seed)});
    }
  }
  std::vector<std::string> errors(result.runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= result.runs.size()) return;
      RunRecord& run = result.runs[job];
      const Federation& fed = federations[job % config.seeds.size()];
      try {
        Trainer trainer(fed, MakeTrainingConfig(config, run.method),
                        RngStreams(run.seed));
        run.trace = trainer.Run();
        WriteText(run.csv_path, FormatCsv(run.trace, config.wall_clock));
      } catch (const std::exception& e) {
        errors[job] = "method " + std::string(MethodName(run.method)) +
                      ", seed " + std::to_string(run.seed) + ": " + e.what();
      }
    }
  };
  const std::size_t workers = std::min(config.workers, result.runs.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  nlohmann::json summary;
  summary["config"] = SerializeConfig(config);
  summary["methods"] = nlohmann::json::object();
  for (Method method : config.methods) {
    std::vector<const RunRecord*> runs;
    for (std::size_t j = 0; j < result.runs.size(); ++j) {
      if (result.runs[j].method == method && errors[j].empty()) {
        runs.push_back(&result.runs[j]);
      }
    }
    nlohmann::json entry;
    entry["seeds"] = nlohmann::json::array();
    for (const RunRecord* run : runs) entry["seeds"].push_back(run->seed);
    nlohmann::json rounds = nlohmann::json::array();
    std::vector<double> wall, selected, final_acc, final_loss;
    for (std::size_t t = 0; t < config.rounds && !runs.empty(); ++t) {
      std::vector<double> loss, acc, d, count;
      for (const RunRecord* run : runs) {
        const RoundMetrics& r = run->trace[t];
        loss.push_back(r.test_loss);
        acc.push_back(r.test_accuracy);
        d.push_back(r.d_value);
        count.push_back(static_cast<double>(r.num_selected));
      }
      rounds.push_back({{"round", t + 1},
                        {"test_loss", CiJson(MeanWithCi(loss))},
                        {"test_accuracy", CiJson(MeanWithCi(acc))},
                        {"d_value", CiJson(MeanWithCi(d))},
                        {"num_selected", CiJson(MeanWithCi(count))}});
    }
    for (const RunRecord* run : runs) {
      double ms = 0.0, sel = 0.0;
      for (const RoundMetrics& r : run->trace) {
        ms += r.wall_ms;
        sel += static_cast<double>(r.num_selected);
      }
      wall.push_back(config.wall_clock ? ms : 0.0);
      selected.push_back(sel / static_cast<double>(run->trace.size()));
      final_acc.push_back(run->trace.back().test_accuracy);
      final_loss.push_back(run->trace.back().test_loss);
    }
    entry["rounds"] = std::move(rounds);
    entry["mean_selected_devices"] = CiJson(MeanWithCi(selected));
    entry["solver_wall_ms"] = CiJson(MeanWithCi(wall));
    entry["final_test_accuracy"] = CiJson(MeanWithCi(final_acc));
    entry["final_test_loss"] = CiJson(MeanWithCi(final_loss));
    summary["methods"][std::string(MethodName(method))] = std::move(entry);
  }
  result.summary_path = out_dir / "summary.json";
  WriteText(result.summary_path, summary.dump(2) + "\n");

  std::string failure;
  for (const std::string& e : errors) {
    if (e.empty()) continue;
    if (!failure.empty()) failure += "; ";
    failure += e;
  }
  if (!failure.empty()) throw std::runtime_error(failure);
  return result;
}

}  // namespace otafl
