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

#include "otafl/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "otafl/errors.hpp"

namespace otafl {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitCommas(std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = text.find(',');
    parts.push_back(Trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return parts;
}

// Conversion failures throw std::invalid_argument; callers attach the key.
template <typename T>
T ParseNumber(std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("cannot parse '" + std::string(text) + "'");
  }
  return value;
}

double ParseReal(std::string_view text) {
  // from_chars rejects a leading '+'; accept it for hand-written configs.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  return ParseNumber<double>(text);
}

std::size_t ParseCount(std::string_view text) {
  return ParseNumber<std::size_t>(text);
}

bool ParseBool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("expected true or false, got '" +
                              std::string(text) + "'");
}

std::string FormatReal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

RoundMode ParseRoundMode(std::string_view text) {
  if (text == "static") return RoundMode::kStatic;
  if (text == "per_round") return RoundMode::kPerRound;
  throw std::invalid_argument("expected static or per_round");
}

DatasetKind ParseDatasetKind(std::string_view text) {
  if (text == "synthetic") return DatasetKind::kSynthetic;
  if (text == "idx") return DatasetKind::kIdx;
  throw std::invalid_argument("expected synthetic or idx");
}

void ApplyProfile(ExperimentConfig& c, std::string_view profile) {
  if (profile == "paper") {
    c.profile = "paper";
  } else if (profile == "desk") {
    c.profile = "desk";
    c.num_devices = 20;
    c.num_antennas = 8;
  } else {
    throw std::invalid_argument("expected paper or desk");
  }
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"M", [](auto& c, auto v) { c.num_devices = ParseCount(v); }},
      {"N", [](auto& c, auto v) { c.num_antennas = ParseCount(v); }},
      {"P0_dbm", [](auto& c, auto v) { c.p0_dbm = ParseReal(v); }},
      {"noise_dbm", [](auto& c, auto v) { c.noise_dbm = ParseReal(v); }},
      {"r_min_m", [](auto& c, auto v) { c.r_min_m = ParseReal(v); }},
      {"r_max_m", [](auto& c, auto v) { c.r_max_m = ParseReal(v); }},
      {"method", [](auto& c, auto v) { c.methods = ParseMethodList(v); }},
      {"T", [](auto& c, auto v) { c.rounds = ParseCount(v); }},
      {"lr", [](auto& c, auto v) { c.learning_rate = ParseReal(v); }},
      {"batch",
       [](auto& c, auto v) { c.batch_size = v == "full" ? 0 : ParseCount(v); }},
      {"seeds", [](auto& c, auto v) { c.seeds = ParseSeedList(v); }},
      {"round_mode", [](auto& c, auto v) { c.round_mode = ParseRoundMode(v); }},
      {"dataset", [](auto& c, auto v) { c.dataset = ParseDatasetKind(v); }},
      {"samples_per_device",
       [](auto& c, auto v) { c.samples_per_device = ParseCount(v); }},
      {"test_samples", [](auto& c, auto v) { c.test_samples = ParseCount(v); }},
      {"classes",
       [](auto& c, auto v) { c.num_classes = static_cast<int>(ParseCount(v)); }},
      {"features", [](auto& c, auto v) { c.feature_dim = ParseCount(v); }},
      {"class_separation",
       [](auto& c, auto v) { c.class_separation = ParseReal(v); }},
      {"idx_train_images",
       [](auto& c, auto v) { c.idx_train_images = std::string(v); }},
      {"idx_train_labels",
       [](auto& c, auto v) { c.idx_train_labels = std::string(v); }},
      {"idx_test_images",
       [](auto& c, auto v) { c.idx_test_images = std::string(v); }},
      {"idx_test_labels",
       [](auto& c, auto v) { c.idx_test_labels = std::string(v); }},
      {"sca_max_iters", [](auto& c, auto v) { c.sca_max_iters = ParseCount(v); }},
      {"sca_tol", [](auto& c, auto v) { c.sca_tol = ParseReal(v); }},
      {"sca_restarts", [](auto& c, auto v) { c.sca_restarts = ParseCount(v); }},
      {"adsbf_eps", [](auto& c, auto v) { c.adsbf_eps = ParseReal(v); }},
      {"adsbf_max_iters",
       [](auto& c, auto v) { c.adsbf_max_iters = ParseCount(v); }},
      {"output", [](auto& c, auto v) { c.output = std::string(v); }},
      {"workers", [](auto& c, auto v) { c.workers = ParseCount(v); }},
      {"wall_clock", [](auto& c, auto v) { c.wall_clock = ParseBool(v); }},
  };
  return table;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

}  // namespace

double ExperimentConfig::power_limit_watts() const {
  return DbmToWatts(p0_dbm);
}

double ExperimentConfig::noise_power_watts() const {
  return DbmToWatts(noise_dbm);
}

void ExperimentConfig::Validate() const {
  auto fail = [](const char* key, const char* what) {
    throw ConfigError(key, 0, what);
  };
  if (profile != "paper" && profile != "desk") fail("profile", "expected paper or desk");
  if (num_devices < 1) fail("M", "must be >= 1");
  if (num_antennas < 1) fail("N", "must be >= 1");
  if (!std::isfinite(p0_dbm)) fail("P0_dbm", "must be finite");
  if (!std::isfinite(noise_dbm)) fail("noise_dbm", "must be finite");
  if (!(r_min_m > 0.0)) fail("r_min_m", "must be positive");
  if (!(r_max_m >= r_min_m) || !std::isfinite(r_max_m)) {
    fail("r_max_m", "must be finite and >= r_min_m");
  }
  if (methods.empty()) fail("method", "needs at least one method");
  if (rounds < 1) fail("T", "must be >= 1");
  if (!(learning_rate > 0.0)) fail("lr", "must be positive");
  if (seeds.empty()) fail("seeds", "needs at least one seed");
  if (samples_per_device < 1) fail("samples_per_device", "must be >= 1");
  if (test_samples < 1) fail("test_samples", "must be >= 1");
  if (num_classes < 2) fail("classes", "must be >= 2");
  if (feature_dim < 1) fail("features", "must be >= 1");
  if (!(class_separation > 0.0)) fail("class_separation", "must be positive");
  if (dataset == DatasetKind::kIdx) {
    if (idx_train_images.empty()) fail("idx_train_images", "required for idx data");
    if (idx_train_labels.empty()) fail("idx_train_labels", "required for idx data");
    if (idx_test_images.empty()) fail("idx_test_images", "required for idx data");
    if (idx_test_labels.empty()) fail("idx_test_labels", "required for idx data");
  }
  if (sca_max_iters < 1) fail("sca_max_iters", "must be >= 1");
  if (!(sca_tol > 0.0)) fail("sca_tol", "must be positive");
  if (!(adsbf_eps > 0.0)) fail("adsbf_eps", "must be positive");
  if (adsbf_max_iters < 1) fail("adsbf_max_iters", "must be >= 1");
  if (workers < 1) fail("workers", "must be >= 1");
  if (output.empty()) fail("output", "must not be empty");
}

ExperimentConfig ParseConfig(std::string_view text) {
  std::vector<Line> lines;
  std::map<std::string, int, std::less<>> seen;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    ++number;
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos
                                                ? std::string_view::npos
                                                : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    raw = Trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(raw), number, "expected 'key = value'");
    }
    std::string key(Trim(raw.substr(0, eq)));
    std::string value(Trim(raw.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", number, "missing key");
    if (key != "profile" && !Setters().contains(key)) {
      throw ConfigError(key, number, "unknown key");
    }
    if (auto [it, fresh] = seen.emplace(key, number); !fresh) {
      throw ConfigError(key, number,
                        "duplicate key (first set on line " +
                            std::to_string(it->second) + ")");
    }
    lines.push_back({number, std::move(key), std::move(value)});
  }

  ExperimentConfig config;
  for (const Line& line : lines) {
    if (line.key != "profile") continue;
    try {
      ApplyProfile(config, line.value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line.key, line.number, e.what());
    }
  }
  for (const Line& line : lines) {
    if (line.key == "profile") continue;
    try {
      Setters().find(line.key)->second(config, line.value);
    } catch (const std::exception& e) {
      throw ConfigError(line.key, line.number, e.what());
    }
  }
  try {
    config.Validate();
  } catch (const ConfigError& e) {
    const auto it = seen.find(e.key());
    const int at = it == seen.end() ? 0 : it->second;
    std::string what = e.what();
    what = what.substr(what.find(": ") + 2);
    throw ConfigError(e.key(), at, what);
  }
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string SerializeConfig(const ExperimentConfig& c) {
  std::ostringstream out;
  auto put = [&](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto join = [](const auto& items, auto format) {
    std::string s;
    for (const auto& item : items) {
      if (!s.empty()) s += ',';
      s += format(item);
    }
    return s;
  };
  put("profile", c.profile);
  put("M", std::to_string(c.num_devices));
  put("N", std::to_string(c.num_antennas));
  put("P0_dbm", FormatReal(c.p0_dbm));
  put("noise_dbm", FormatReal(c.noise_dbm));
  put("r_min_m", FormatReal(c.r_min_m));
  put("r_max_m", FormatReal(c.r_max_m));
  put("method", join(c.methods, [](Method m) { return std::string(MethodName(m)); }));
  put("T", std::to_string(c.rounds));
  put("lr", FormatReal(c.learning_rate));
  put("batch", c.batch_size == 0 ? "full" : std::to_string(c.batch_size));
  put("seeds", join(c.seeds, [](std::uint64_t s) { return std::to_string(s); }));
  put("round_mode", c.round_mode == RoundMode::kStatic ? "static" : "per_round");
  put("dataset", c.dataset == DatasetKind::kSynthetic ? "synthetic" : "idx");
  put("samples_per_device", std::to_string(c.samples_per_device));
  put("test_samples", std::to_string(c.test_samples));
  put("classes", std::to_string(c.num_classes));
  put("features", std::to_string(c.feature_dim));
  put("class_separation", FormatReal(c.class_separation));
  if (!c.idx_train_images.empty()) put("idx_train_images", c.idx_train_images);
  if (!c.idx_train_labels.empty()) put("idx_train_labels", c.idx_train_labels);
  if (!c.idx_test_images.empty()) put("idx_test_images", c.idx_test_images);
  if (!c.idx_test_labels.empty()) put("idx_test_labels", c.idx_test_labels);
  put("sca_max_iters", std::to_string(c.sca_max_iters));
  put("sca_tol", FormatReal(c.sca_tol));
  put("sca_restarts", std::to_string(c.sca_restarts));
  put("adsbf_eps", FormatReal(c.adsbf_eps));
  put("adsbf_max_iters", std::to_string(c.adsbf_max_iters));
  put("output", c.output);
  put("workers", std::to_string(c.workers));
  put("wall_clock", c.wall_clock ? "true" : "false");
  return out.str();
}

std::vector<std::uint64_t> ParseSeedList(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (std::string_view part : SplitCommas(text)) {
    seeds.push_back(ParseNumber<std::uint64_t>(part));
  }
  return seeds;
}

std::vector<Method> ParseMethodList(std::string_view text) {
  std::vector<Method> methods;
  for (std::string_view part : SplitCommas(text)) {
    if (part == "all") {
      for (Method m : {Method::kGsds, Method::kAdsbf, Method::kSelectAll,
                       Method::kTopOne}) {
        methods.push_back(m);
      }
      continue;
    }
    try {
      methods.push_back(ParseMethod(part));
    } catch (const ParameterError& e) {
      throw std::invalid_argument(e.what());
    }
  }
  return methods;
}

}  // namespace otafl
