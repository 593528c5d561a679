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

#include "bridgespan/cli.h"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <vector>

#include "bridgespan/checkpoint.h"
#include "bridgespan/cost_model.h"
#include "bridgespan/dqn_agent.h"
#include "bridgespan/environment.h"
#include "bridgespan/errors.h"
#include "bridgespan/value_iteration.h"

namespace bridgespan::cli {
namespace {

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

std::string Timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  localtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
  return buf;
}

std::string DescribeState(const BridgeSpanEnv& env, GridState s) {
  const GridCoord g = env.StateToGrid(s.index);
  return Format("state %d (row %d, %s, %d m)", s.index, g.row,
                env.config().materials[g.row].name.c_str(), g.span);
}

// Runs `body`, mapping exceptions onto exit codes.
template <typename Body>
int Guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

void CreateRunDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             (ec ? ": " + ec.message() : ""));
  }
}

}  // namespace

std::filesystem::path RunDirectory(const CommandOptions& options) {
  return options.config.output_dir /
         (options.name.empty() ? Timestamp() : options.name);
}

int Analyze(const CommandOptions& options, std::ostream& out,
            std::ostream& err) {
  return Guarded(err, [&] {
    const RunConfig& cfg = options.config;
    cfg.Validate();
    out << Format("%-12s %12s %12s %14s %10s %10s\n", "material",
                  "closed_m", "numeric_m", "cost_yuan_m2", "ratio",
                  "(n-1)/mn");
    const MaterialCostParams* winner = nullptr;
    EconomicSpanResult best;
    double worst_gap = 0.0;
    for (const MaterialCostParams& p : cfg.env.materials) {
      const EconomicSpanResult closed = EconomicSpanClosedForm(p);
      const EconomicSpanResult numeric = EconomicSpanNumeric(
          p, cfg.analyze_lo, cfg.analyze_hi, cfg.analyze_tol);
      worst_gap = std::max(worst_gap, std::abs(closed.span - numeric.span));
      out << Format("%-12s %12.4f %12.4f %14.2f %10.4f %10.4f\n",
                    p.name.c_str(), closed.span, numeric.span,
                    closed.unit_cost, closed.balance_ratio,
                    EconomicBalanceRatio(p));
      if (winner == nullptr || closed.unit_cost < best.unit_cost) {
        winner = &p;
        best = closed;
      }
    }
    out << Format("winner: %s, %.1f m, %.1f yuan/m^2\n", winner->name.c_str(),
                  best.span, best.unit_cost);
    const BridgeSpanEnv env(cfg.env);
    const GridState grid = env.OptimalState();
    out << Format("grid winner: %s, %.1f yuan/m^2\n",
                  DescribeState(env, grid).c_str(), env.CellCost(grid));
    out << Format("max |closed - numeric| span: %.3g m\n", worst_gap);
    return kExitOk;
  });
}

int TrainCommand(const CommandOptions& options, std::ostream& out,
                 std::ostream& err) {
  return Guarded(err, [&] {
    const RunConfig& cfg = options.config;
    cfg.Validate();
    const std::filesystem::path dir = RunDirectory(options);
    CreateRunDirectory(dir);

    BridgeSpanEnv env(cfg.env, cfg.seed);
    const auto started = std::chrono::steady_clock::now();
    const TrainResult result = Train(env, cfg.train, [&](const EpisodeMetrics& m) {
      if (m.episode % 10 == 0 || m.episode == cfg.train.episodes) {
        out << Format("episode %d steps %lld epsilon %.3f loss %.6f return %.1f\n",
                      m.episode, static_cast<long long>(m.total_steps),
                      m.epsilon, m.mean_loss, m.episode_return)
            << std::flush;
      }
    });
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started)
                               .count();

    SaveCheckpoint(result.params, result.spec, dir / kCheckpointFile);
    {
      std::ofstream csv(dir / kMetricsFile, std::ios::binary | std::ios::trunc);
      WriteMetricsCsv(result.metrics, csv);
      if (!csv) throw std::runtime_error("cannot write metrics CSV");
    }

    const QNetwork<float> net(result.spec);
    const ObservationEncoder encoder(env);
    const QTable table = ComputeQTable(net, result.params, encoder);
    const GridState goal = env.OptimalState();
    const int hits = EndpointCoverage(GreedyPolicy(table), env, goal,
                                      cfg.env.max_steps);
    out << Format("trained %d episodes in %.1f s; checkpoint %s\n",
                  cfg.train.episodes, seconds,
                  (dir / kCheckpointFile).string().c_str());
    out << Format("success fraction: %d/%d = %.4f (endpoint %s)\n", hits,
                  env.num_states(),
                  static_cast<double>(hits) / env.num_states(),
                  DescribeState(env, goal).c_str());
    return kExitOk;
  });
}

int Eval(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const RunConfig& cfg = options.config;
    cfg.Validate();
    const BridgeSpanEnv env(cfg.env, cfg.seed);
    if (options.start &&
        (*options.start < 0 || *options.start >= env.num_states())) {
      throw ArgumentError("--start must lie in [0, " +
                          std::to_string(env.num_states()) + ")");
    }
    if (options.checkpoint.empty()) throw ArgumentError("--checkpoint is required");
    const NetworkSpec spec =
        GridQNetworkSpec(cfg.env.num_materials(), cfg.env.num_columns(),
                         cfg.env.cell_pixels, kNumActions);
    const ParameterSet<float> params = LoadCheckpoint(options.checkpoint, spec);

    const std::filesystem::path dir = RunDirectory(options);
    CreateRunDirectory(dir);
    const QNetwork<float> net(spec);
    const ObservationEncoder encoder(env);
    const Policy policy = GreedyPolicy(ComputeQTable(net, params, encoder));
    const GridState goal = env.OptimalState();

    std::vector<int> starts;
    if (options.start) {
      starts.push_back(*options.start);
    } else {
      for (int s = 0; s < env.num_states(); ++s) starts.push_back(s);
    }
    int hits = 0;
    for (int s : starts) {
      const EpisodeTrace trace =
          GreedyRollout(policy, env, GridState{s}, cfg.env.max_steps);
      const auto image_path = dir / ("trajectory_" + std::to_string(s) + ".ppm");
      WritePpm(env.RenderTrajectory(trace), image_path);
      if (trace.end() == goal) ++hits;
      out << Format("start %3d -> end %s after %zu moves\n", s,
                    DescribeState(env, trace.end()).c_str(),
                    trace.states.size() - 1);
    }
    out << Format("endpoints at %s: %d/%zu\n", DescribeState(env, goal).c_str(),
                  hits, starts.size());
    out << "images: " << dir.string() << '\n';
    return kExitOk;
  });
}

int Oracle(const CommandOptions& options, std::ostream& out,
           std::ostream& err) {
  return Guarded(err, [&] {
    const RunConfig& cfg = options.config;
    cfg.Validate();
    if (cfg.train.gamma >= 1.0) {
      throw ArgumentError("oracle needs train.gamma < 1");
    }
    const BridgeSpanEnv env(cfg.env, cfg.seed);
    const GridState goal = env.OptimalState();
    const ValueIterationResult vi = ValueIteration(
        env, cfg.train.gamma, cfg.train.reward_scale, cfg.oracle_tol);
    const int hits =
        EndpointCoverage(vi.AsPolicy(), env, goal, cfg.env.max_steps);
    out << Format("optimal state: %s, cost %.1f yuan/m^2\n",
                  DescribeState(env, goal).c_str(), env.CellCost(goal));
    out << Format("V(optimal) = %.6f (gamma %.4g, reward scale %.4g, %d sweeps)\n",
                  vi.values[goal.index], cfg.train.gamma,
                  cfg.train.reward_scale, vi.iterations);
    out << Format("greedy endpoint coverage: %d/%d\n", hits, env.num_states());
    return kExitOk;
  });
}

int Main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Economic bridge span: analytic optimum and DQN gridworld"};
  app.require_subcommand(1);

  std::string config_path;
  std::string name;
  std::string checkpoint;
  int start = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value config file");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "closed-form and numeric economic spans");
  CLI::App* train = app.add_subcommand("train", "train the DQN agent");
  CLI::App* eval = app.add_subcommand("eval", "greedy rollouts of a trained checkpoint");
  CLI::App* oracle = app.add_subcommand("oracle", "exact value-iteration policy");
  for (CLI::App* sub : {analyze, train, eval, oracle}) add_common(sub);
  for (CLI::App* sub : {train, eval}) {
    sub->add_option("--name", name, "output subdirectory name");
  }
  eval->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
  CLI::Option* start_opt = eval->add_option("--start", start, "single start state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  CommandOptions options;
  try {
    options.config = config_path.empty() ? ParseRunConfig("")
                                         : LoadRunConfig(config_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  options.name = name;
  options.checkpoint = checkpoint;
  if (start_opt->count() > 0) options.start = start;

  if (analyze->parsed()) return Analyze(options, out, err);
  if (train->parsed()) return TrainCommand(options, out, err);
  if (eval->parsed()) return Eval(options, out, err);
  return Oracle(options, out, err);
}

}  // namespace bridgespan::cli
