// Copyright 2026 The BridgeSpan Authors.
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

#include "bridgespan/run_config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "bridgespan/errors.h"

namespace bridgespan {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw ArgumentError("config: bad value '" + value + "' for " + key);
  }
  return out;
}

struct PartialMaterial {
  std::optional<double> a, b, m, c, r;
};

void Apply(RunConfig& cfg, std::map<std::string, PartialMaterial>& materials,
           std::vector<std::string>& order, const std::string& key,
           const std::string& value) {
  auto d = [&] { return ParseNumber<double>(key, value); };
  auto i = [&] { return ParseNumber<int>(key, value); };
  auto i64 = [&] { return ParseNumber<std::int64_t>(key, value); };
  auto sz = [&] { return ParseNumber<std::size_t>(key, value); };

  const std::map<std::string, std::function<void()>> setters = {
      {"seed", [&] { cfg.seed = ParseNumber<std::uint64_t>(key, value); }},
      {"output_dir", [&] { cfg.output_dir = value; }},
      {"env.min_span", [&] { cfg.env.min_span = i(); }},
      {"env.max_span", [&] { cfg.env.max_span = i(); }},
      {"env.step_length", [&] { cfg.env.step_length = i(); }},
      {"env.max_steps", [&] { cfg.env.max_steps = i(); }},
      {"env.cell_pixels", [&] { cfg.env.cell_pixels = i(); }},
      {"train.gamma", [&] { cfg.train.gamma = d(); }},
      {"train.epsilon_start", [&] { cfg.train.epsilon_start = d(); }},
      {"train.epsilon_end", [&] { cfg.train.epsilon_end = d(); }},
      {"train.epsilon_decay_steps", [&] { cfg.train.epsilon_decay_steps = i64(); }},
      {"train.replay_capacity", [&] { cfg.train.replay_capacity = sz(); }},
      {"train.warmup", [&] { cfg.train.warmup = sz(); }},
      {"train.batch_size", [&] { cfg.train.batch_size = sz(); }},
      {"train.learning_rate", [&] { cfg.train.learning_rate = d(); }},
      {"train.reward_scale", [&] { cfg.train.reward_scale = d(); }},
      {"train.target_sync_interval", [&] { cfg.train.target_sync_interval = i64(); }},
      {"train.episodes", [&] { cfg.train.episodes = i(); }},
      {"analyze.lo", [&] { cfg.analyze_lo = d(); }},
      {"analyze.hi", [&] { cfg.analyze_hi = d(); }},
      {"analyze.tol", [&] { cfg.analyze_tol = d(); }},
      {"oracle.tol", [&] { cfg.oracle_tol = d(); }},
  };
  if (const auto it = setters.find(key); it != setters.end()) {
    it->second();
    return;
  }
  if (key == "materials") {
    order.clear();
    std::stringstream list(value);
    std::string name;
    while (std::getline(list, name, ',')) {
      name = Trim(name);
      if (name.empty()) throw ArgumentError("config: empty material name");
      order.push_back(name);
    }
    return;
  }
  if (key.rfind("material.", 0) == 0) {
    const auto dot = key.rfind('.');
    const std::string name = key.substr(9, dot - 9);
    const std::string field = key.substr(dot + 1);
    if (name.empty() || dot <= 9) {
      throw ArgumentError("config: malformed material key " + key);
    }
    PartialMaterial& pm = materials[name];
    if (field == "a") pm.a = d();
    else if (field == "b") pm.b = d();
    else if (field == "m") pm.m = d();
    else if (field == "c") pm.c = d();
    else if (field == "r") pm.r = d();
    else throw ArgumentError("config: unknown material field " + key);
    return;
  }
  throw ArgumentError("config: unknown key '" + key + "'");
}

}  // namespace

void RunConfig::Validate() const {
  env.Validate();
  train.Validate();
  if (!(analyze_lo > 0.0 && analyze_hi > analyze_lo)) {
    throw ArgumentError("config: analyze.lo/hi must satisfy 0 < lo < hi");
  }
  if (!(analyze_tol > 0.0)) throw ArgumentError("config: analyze.tol must be > 0");
  if (!(oracle_tol > 0.0)) throw ArgumentError("config: oracle.tol must be > 0");
  if (output_dir.empty()) throw ArgumentError("config: output_dir is empty");
}

RunConfig ParseRunConfig(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, PartialMaterial> materials;
  std::vector<std::string> order;
  for (const auto& m : DefaultMaterials()) {
    order.push_back(m.name);
    materials[m.name] = {m.a, m.b, m.m, m.c, m.r};
  }

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("config line " + std::to_string(line_no) +
                          ": expected key = value");
    }
    const std::string key = Trim(trimmed.substr(0, eq));
    const std::string value = Trim(trimmed.substr(eq + 1));
    try {
      Apply(cfg, materials, order, key, value);
    } catch (const ArgumentError& e) {
      throw ArgumentError("config line " + std::to_string(line_no) + ": " +
                          e.what());
    }
  }

  cfg.env.materials.clear();
  for (const std::string& name : order) {
    const auto it = materials.find(name);
    if (it == materials.end()) {
      throw ArgumentError("config: material '" + name + "' is not defined");
    }
    const PartialMaterial& pm = it->second;
    if (!pm.a || !pm.b || !pm.m || !pm.c || !pm.r) {
      throw ArgumentError("config: material '" + name +
                          "' needs all of a, b, m, c, r");
    }
    cfg.env.materials.push_back({name, *pm.a, *pm.b, *pm.m, *pm.c, *pm.r});
  }
  cfg.train.seed = cfg.seed;
  cfg.Validate();
  return cfg;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseRunConfig(buffer.str());
}

}  // namespace bridgespan
