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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bridgespan/checkpoint.h"
#include "bridgespan/cost_model.h"
#include "bridgespan/dqn_agent.h"
#include "bridgespan/environment.h"
#include "bridgespan/image.h"
#include "bridgespan/network_spec.h"
#include "bridgespan/q_network.h"
#include "bridgespan/value_iteration.h"
#include "reference_network.h"

namespace bridgespan {
namespace {

constexpr double kSpanTolerance = 0.1;       // m
constexpr double kCostTolerance = 2.0;       // yuan/m^2
constexpr double kGridCostRelTol = 1e-9;
constexpr double kOracleGamma = 0.95;
constexpr double kOracleTol = 1e-10;
constexpr double kOracleBudgetSeconds = 1.0;
constexpr double kGradientRelTol = 1e-4;
constexpr double kGradientStep = 1e-6;
constexpr double kGradientBudgetSeconds = 60.0;
constexpr double kTrainingBudgetSeconds = 1800.0;
constexpr int kRequiredEndpoints = 228;  // ceil(0.95 * 240)
constexpr int kLossWindow = 10;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string Fmt(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

Outcome AnalyticOptima() {
  Outcome o;
  struct Expected {
    MaterialCostParams params;
    double span;
    double cost;
  };
  const Expected expected[] = {{ConcreteMaterial(), 39.6, 11501.0},
                               {CompositeMaterial(), 32.3, 12125.0},
                               {SteelMaterial(), 27.3, 13478.0}};
  for (const Expected& e : expected) {
    const EconomicSpanResult r = EconomicSpanClosedForm(e.params);
    o.detail << ' ' << e.params.name << Fmt(" %.3f m %.2f", r.span, r.unit_cost);
    o.Check(std::abs(r.span - e.span) <= kSpanTolerance, e.params.name + " span");
    o.Check(std::abs(r.unit_cost - e.cost) <= kCostTolerance, e.params.name + " cost");
  }
  return o;
}

Outcome TableOne() {
  Outcome o;
  const NetworkSpec spec = GridQNetworkSpec(3, 80, 16);
  const std::vector<std::int64_t> counts = spec.LayerParamCounts();
  const std::vector<std::int64_t> want_counts = {784, 8224, 0, 983168, 645};
  o.Check(counts == want_counts, "per-layer parameter counts");
  o.Check(spec.TotalParamCount() == 992821, "total parameter count");
  const std::vector<TensorShape> shapes = spec.OutputShapes();
  o.Check(shapes.size() == 5, "layer count");
  if (shapes.size() == 5) {
    o.Check(shapes[0] == TensorShape{12, 320, 16}, "conv1 shape");
    o.Check(shapes[1] == TensorShape{3, 80, 32}, "conv2 shape");
    o.Check(shapes[2].size() == 7680, "flatten size");
    o.Check(shapes[3].size() == 128, "dense1 size");
    o.Check(shapes[4].size() == 5, "output size");
  }
  // The executed forward pass agrees with the declared shapes.
  const QNetwork<float> net(spec);
  const ParameterSet<float> params = InitParameters(spec, 0);
  const BridgeSpanEnv env;
  const ObservationEncoder encoder(env);
  const std::vector<float> q = net.Predict(params, encoder.Encode(GridState{0}));
  o.Check(q.size() == 5, "forward output length");
  o.detail << " total " << spec.TotalParamCount();
  return o;
}

Outcome GridAgreement() {
  Outcome o;
  const BridgeSpanEnv env;
  const GridState best = env.OptimalState();
  const GridCoord g = env.StateToGrid(best.index);
  const double expected = UnitAreaCost(ConcreteMaterial(), 40.0);
  const double rel = std::abs(env.CellCost(best) - expected) / expected;
  o.detail << " state " << best.index << " row " << g.row << " span " << g.span
           << Fmt(" cost %.6f rel.err %.2e", env.CellCost(best), rel);
  o.Check(best.index == 3 && g.row == 0 && g.span == 40, "optimal state");
  o.Check(rel <= kGridCostRelTol, "cost agreement");
  return o;
}

Outcome OraclePolicy() {
  Outcome o;
  const BridgeSpanEnv env;
  const auto started = Clock::now();
  const ValueIterationResult vi = ValueIteration(env, kOracleGamma, 1e-4, kOracleTol);
  const Policy policy = vi.AsPolicy();
  int held = 0;
  for (int s = 0; s < env.num_states(); ++s) {
    const EpisodeTrace trace = GreedyRollout(policy, env, GridState{s}, 200);
    if (trace.end() == GridState{3} &&
        env.Transition(trace.end(), policy(trace.end())) == GridState{3}) {
      ++held;
    }
  }
  const double elapsed = Seconds(started);
  o.detail << " coverage " << held << "/240" << Fmt(" in %.3f s", elapsed);
  o.Check(held == 240, "coverage");
  o.Check(elapsed < kOracleBudgetSeconds, "runtime");
  return o;
}

Outcome GradientCheck() {
  Outcome o;
  const auto started = Clock::now();
  NetworkSpec spec;
  spec.input = {6, 12, 3};
  spec.layers = {LayerSpec::Conv(4, 2, 2), LayerSpec::Conv(6, 3, 3),
                 LayerSpec::Flatten(), LayerSpec::Dense(8, Activation::kRelu),
                 LayerSpec::Dense(5, Activation::kLinear)};
  ParameterSet<double> params = InitParameters(spec, 2024).Cast<double>();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-1.0, 1.0);
  for (auto& layer : params.layers) {
    for (double& b : layer.biases) b = 0.1 * sym(rng);
  }
  std::vector<double> image(spec.input.size());
  for (double& v : image) v = unit(rng);
  std::vector<double> upstream(5);
  for (double& g : upstream) g = sym(rng);

  auto objective = [&](const ParameterSet<double>& p) {
    const std::vector<double> q = testing::ReferenceForward(spec, p, image);
    double f = 0.0;
    for (int k = 0; k < 5; ++k) f += upstream[k] * q[k];
    return f;
  };
  const QNetwork<double> net(spec);
  ForwardCache<double> cache;
  net.Forward(params, image, 1, cache);
  ParameterSet<double> grads;
  net.Backward(params, cache, upstream, grads);
  const std::vector<double> analytic = grads.Flatten();

  std::vector<double> flat = params.Flatten();
  ParameterSet<double> probe = params;
  double worst = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const double saved = flat[i];
    flat[i] = saved + kGradientStep;
    probe.Unflatten(flat);
    const double up = objective(probe);
    flat[i] = saved - kGradientStep;
    probe.Unflatten(flat);
    const double down = objective(probe);
    flat[i] = saved;
    const double numeric = (up - down) / (2.0 * kGradientStep);
    const double scale = std::max(std::abs(numeric), std::abs(analytic[i]));
    if (scale < 1e-12) continue;
    worst = std::max(worst, std::abs(numeric - analytic[i]) / scale);
  }
  const double elapsed = Seconds(started);
  o.detail << " params " << flat.size() << Fmt(" max rel.err %.2e in %.2f s", worst, elapsed);
  o.Check(worst < kGradientRelTol, "gradient agreement");
  o.Check(elapsed < kGradientBudgetSeconds, "runtime");
  return o;
}

Outcome LearningResult() {
  Outcome o;
  EnvConfig env_config;
  env_config.cell_pixels = 4;
  BridgeSpanEnv env(env_config, 0);
  TrainConfig config;
  config.seed = 0;
  const auto started = Clock::now();
  const TrainResult result = Train(env, config);
  const double elapsed = Seconds(started);

  const QNetwork<float> net(result.spec);
  const ObservationEncoder encoder(env);
  const Policy policy = GreedyPolicy(ComputeQTable(net, result.params, encoder));
  const int hits = EndpointCoverage(policy, env, GridState{3}, env_config.max_steps);
  const GridState from_far = GreedyRollout(policy, env, GridState{239}, 200).end();

  // Warmup episodes run no training step and report no loss; the first
  // window starts at the first episode that trained.
  const auto& rows = result.metrics.episodes;
  std::vector<double> trained;
  for (const EpisodeMetrics& m : rows) {
    if (m.train_steps > 0) trained.push_back(m.mean_loss);
  }
  double first = 0.0, last = 0.0;
  const bool enough = trained.size() >= 2 * kLossWindow;
  if (enough) {
    for (int i = 0; i < kLossWindow; ++i) {
      first += trained[i] / kLossWindow;
      last += trained[trained.size() - kLossWindow + i] / kLossWindow;
    }
  }
  o.detail << " episodes " << rows.size() << Fmt(" in %.1f s", elapsed)
           << " endpoints " << hits << "/240 (need " << kRequiredEndpoints << ")"
           << " 239->" << from_far.index
           << Fmt(" loss first10 %.6f last10 %.6f", first, last);
  o.Check(elapsed <= kTrainingBudgetSeconds, "runtime");
  o.Check(hits >= kRequiredEndpoints, "endpoint coverage");
  o.Check(enough && last < first, "loss decay");
  return o;
}

Outcome FormatRoundTrips() {
  Outcome o;
  const NetworkSpec spec = GridQNetworkSpec(3, 80, 4);
  const ParameterSet<float> params = InitParameters(spec, 99);
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "bridgespan_acceptance.bsqn";
  SaveCheckpoint(params, spec, path);
  const ParameterSet<float> loaded = LoadCheckpoint(path, spec);
  std::filesystem::remove(path);
  o.Check(EncodeCheckpoint(loaded) == EncodeCheckpoint(params), "checkpoint bytes");
  o.Check(loaded == params, "checkpoint values");

  const BridgeSpanEnv env;
  bool renders_equal = true;
  for (int s : {0, 3, 117, 239}) {
    renders_equal &= EncodePpm(env.RenderState(GridState{s})) ==
                     EncodePpm(BridgeSpanEnv().RenderState(GridState{s}));
  }
  o.Check(renders_equal, "PPM render bytes");

  EnvConfig small;
  small.cell_pixels = 1;
  small.max_steps = 50;
  TrainConfig config;
  config.episodes = 6;
  config.warmup = 64;
  config.seed = 7;
  BridgeSpanEnv env_a(small), env_b(small);
  const std::string csv_a = MetricsCsv(Train(env_a, config).metrics);
  const std::string csv_b = MetricsCsv(Train(env_b, config).metrics);
  o.Check(csv_a == csv_b, "metrics CSV bytes");
  o.detail << " checkpoint " << EncodeCheckpoint(params).size() << " B, csv "
           << csv_a.size() << " B";
  return o;
}

Outcome EnvironmentContract() {
  Outcome o;
  BridgeSpanEnv env;
  // Bijection.
  bool bijective = true;
  for (int s = 0; s < env.num_states(); ++s) {
    const GridCoord g = env.StateToGrid(s);
    bijective &= env.GridToState(g.row, g.span).index == s;
  }
  o.Check(bijective, "state/grid bijection");

  // UP from (row 1, col 58).
  const GridState from = env.GridToState(1, 10 + 58 * 10);
  env.ResetTo(from);
  const StepResult up = env.Step(Action::kUp);
  const GridCoord landed = env.StateToGrid(up.next_state.index);
  o.Check(landed.row == 0 && landed.col == 58, "UP from (1, 58)");

  // Random walks: clamp-as-NOOP, reward of the post-move cell, done at 200.
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> pick(0, kNumActions - 1);
  bool clamp_ok = true, reward_ok = true, done_ok = true;
  for (int episode = 0; episode < 50; ++episode) {
    GridState s = env.Reset(episode).state;
    for (int t = 1; t <= 200; ++t) {
      const Action a = static_cast<Action>(pick(rng));
      const GridCoord g = env.StateToGrid(s.index);
      const Displacement d = ActionDisplacement(a, 1);
      const int row = g.row + d.d_row, col = g.col + d.d_span;
      const int want_row = (row < 0 || row > 2) ? g.row : row;
      const int want_col = (col < 0 || col > 79) ? g.col : col;
      const StepResult r = env.Step(a);
      const GridCoord n = env.StateToGrid(r.next_state.index);
      clamp_ok &= n.row == want_row && n.col == want_col;
      reward_ok &= r.reward == -UnitAreaCost(env.config().materials[n.row], n.span);
      done_ok &= r.done == (t == 200) && !r.truncated;
      s = r.next_state;
    }
  }
  o.Check(clamp_ok, "clamp-as-NOOP");
  o.Check(reward_ok, "reward of post-move cell");
  o.Check(done_ok, "done exactly at step 200");
  o.detail << " 50 episodes x 200 steps";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace bridgespan

int main() {
  using namespace bridgespan;
  const std::vector<Criterion> criteria = {
      {1, "analytic optima", AnalyticOptima},
      {2, "Table-1 conformance", TableOne},
      {3, "brute-force/grid agreement", GridAgreement},
      {4, "oracle policy", OraclePolicy},
      {5, "gradient correctness", GradientCheck},
      {6, "learning result", LearningResult},
      {7, "format round-trips", FormatRoundTrips},
      {8, "environment contract", EnvironmentContract},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail << " [exception: " << e.what() << "]";
    }
    if (!outcome.pass) ++failures;
    std::printf("%s  %d %s:%s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
