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

#include "bridgespan/dqn_agent.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bridgespan/errors.h"
#include "bridgespan/value_iteration.h"

namespace bridgespan {
namespace {

TEST(SelectActionTest, GreedyPicksArgmax) {
  Rng rng(0);
  const std::vector<float> q = {1, 5, 2, 0, -1};
  EXPECT_EQ(SelectAction(q, 0.0, rng), Action::kUp);
}

TEST(SelectActionTest, TiesGoToLowestCode) {
  Rng rng(0);
  EXPECT_EQ(SelectAction(std::vector<float>{7, 7, 0, 0, 0}, 0.0, rng),
            Action::kNoop);
  EXPECT_EQ(ArgmaxAction(std::vector<float>{0, 0, 3, 3, 3}), Action::kDown);
}

TEST(SelectActionTest, FullExplorationIsUniform) {
  Rng rng(77);
  const std::vector<float> q = {0, 9, 0, 0, 0};
  constexpr int kDraws = 100000;
  std::array<int, kNumActions> counts{};
  for (int i = 0; i < kDraws; ++i) ++counts[ActionCode(SelectAction(q, 1.0, rng))];
  const double sigma = std::sqrt(kDraws * 0.2 * 0.8);
  for (int c : counts) EXPECT_NEAR(c, kDraws * 0.2, 3.0 * sigma);
}

TEST(SelectActionTest, LazyVariantSkipsNetworkWhenExploring) {
  Rng rng(1);
  int evaluations = 0;
  const std::vector<float> q = {0, 0, 0, 0, 1};
  for (int i = 0; i < 100; ++i) {
    SelectActionLazy([&] { ++evaluations; return std::span<const float>(q); }, 1.0, rng);
  }
  EXPECT_EQ(evaluations, 0);
  EXPECT_EQ(SelectActionLazy([&] { return std::span<const float>(q); }, 0.0, rng),
            Action::kRight);
}

TEST(EpsilonScheduleTest, LinearThenConstant) {
  const TrainConfig config;
  EXPECT_DOUBLE_EQ(EpsilonAt(config, 0), 1.0);
  EXPECT_DOUBLE_EQ(EpsilonAt(config, 25000), 0.525);
  EXPECT_DOUBLE_EQ(EpsilonAt(config, 50000), 0.05);
  EXPECT_DOUBLE_EQ(EpsilonAt(config, 1'000'000), 0.05);
  double prev = 2.0;
  for (std::int64_t t = 0; t <= 60000; t += 97) {
    const double eps = EpsilonAt(config, t);
    EXPECT_LE(eps, prev);
    EXPECT_GE(eps, 0.05);
    EXPECT_LE(eps, 1.0);
    prev = eps;
  }
}

TEST(TrainConfigTest, RejectsInvalidValues) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.gamma = 1.5;
  EXPECT_THROW(c.Validate(), ArgumentError);
  c = {};
  c.epsilon_end = -0.1;
  EXPECT_THROW(c.Validate(), ArgumentError);
  c = {};
  c.replay_capacity = 16;
  EXPECT_THROW(c.Validate(), ArgumentError);
}

TEST(ComputeTargetsTest, BootstrapArithmetic) {
  QTable target(2);
  for (float& v : target.MutableRow(1)) v = -25.0f;
  target.MutableRow(1)[3] = -20.0f;
  const std::vector<Transition> batch = {{0, 0, -11502.6, 1, false},
                                         {0, 0, -11502.6, 1, true}};
  const auto y = ComputeTargets(batch, target, 0.95, 1e-4);
  EXPECT_NEAR(y[0], -20.15026, 1e-9);
  // Done marks a step budget, so it still bootstraps.
  EXPECT_NEAR(y[1], -20.15026, 1e-9);

  const auto myopic = ComputeTargets(batch, target, 0.0, 1e-4);
  EXPECT_NEAR(myopic[0], -1.15026, 1e-12);
  const auto zero = ComputeTargets(batch, QTable(2), 0.95, 1e-4);
  EXPECT_NEAR(zero[1], -1.15026, 1e-12);
}

NetworkSpec ToySpec() {
  NetworkSpec spec;
  spec.input = {1, 1, 1};
  spec.layers = {LayerSpec::Flatten(), LayerSpec::Dense(1, Activation::kLinear)};
  return spec;
}

TEST(TrainStepTest, ToyNetworkMatchesHandCalculation) {
  const QNetwork<float> net(ToySpec());
  ParameterSet<float> params = ParameterSet<float>::Zeros(ToySpec());
  params.layers[1].weights[0] = 0.5f;
  params.layers[1].biases[0] = 0.25f;
  AdamState adam = AdamState::For(params, AdamConfig{0.01});
  TrainWorkspace ws;
  const std::vector<float> x = {2.0f};
  const std::vector<int> a = {0};
  const std::vector<double> y = {0.25};
  // q = 0.5 * 2 + 0.25 = 1.25, residual 1, loss 1; dL/dw = 4, dL/db = 2.
  EXPECT_DOUBLE_EQ(TrainStep(net, params, adam, x, a, y, ws), 1.0);
  EXPECT_FLOAT_EQ(ws.grads.layers[1].weights[0], 4.0f);
  EXPECT_FLOAT_EQ(ws.grads.layers[1].biases[0], 2.0f);
  EXPECT_NEAR(params.layers[1].weights[0], 0.49, 1e-6);
  EXPECT_NEAR(params.layers[1].biases[0], 0.24, 1e-6);
}

TEST(TrainStepTest, OnlyTakenActionsCarryGradient) {
  const NetworkSpec spec = GridQNetworkSpec(3, 80, 1);
  const QNetwork<float> net(spec);
  ParameterSet<float> params = InitParameters(spec, 3);
  BridgeSpanEnv env(EnvConfig{.cell_pixels = 1});
  const ObservationEncoder encoder(env);
  std::vector<float> inputs = encoder.Encode(GridState{17});
  const auto q = net.Predict(params, inputs);

  // Matching target on the taken action: no residual, no update.
  AdamState adam = AdamState::For(params, {});
  TrainWorkspace ws;
  const ParameterSet<float> before = params;
  const double loss = TrainStep(net, params, adam, inputs, std::vector<int>{2},
                                std::vector<double>{static_cast<double>(q[2])}, ws);
  EXPECT_EQ(loss, 0.0);
  EXPECT_EQ(params, before);
}

TEST(TrainStepTest, LossIsNonNegativeAndRejectsBadActions) {
  const QNetwork<float> net(ToySpec());
  ParameterSet<float> params = ParameterSet<float>::Zeros(ToySpec());
  AdamState adam = AdamState::For(params, {});
  TrainWorkspace ws;
  Rng rng(9);
  std::normal_distribution<double> noise(0.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const std::vector<float> x = {static_cast<float>(noise(rng)),
                                  static_cast<float>(noise(rng))};
    const std::vector<double> y = {noise(rng), noise(rng)};
    EXPECT_GE(TrainStep(net, params, adam, x, std::vector<int>{0, 0}, y, ws), 0.0);
  }
  EXPECT_THROW(TrainStep(net, params, adam, std::vector<float>{1.0f},
                         std::vector<int>{1}, std::vector<double>{0.0}, ws),
               ArgumentError);
}

EnvConfig TinyEnv() {
  EnvConfig env;
  env.cell_pixels = 1;
  env.max_steps = 40;
  return env;
}

TrainConfig TinyTrain() {
  TrainConfig c;
  c.episodes = 4;
  c.warmup = 50;
  c.batch_size = 8;
  c.replay_capacity = 100;
  c.target_sync_interval = 7;
  c.epsilon_decay_steps = 100;
  c.learning_rate = 1e-3;
  c.seed = 11;
  return c;
}

TEST(DqnTrainerTest, SameSeedSameMetricsAndParameters) {
  BridgeSpanEnv env_a(TinyEnv()), env_b(TinyEnv());
  const TrainResult a = Train(env_a, TinyTrain());
  const TrainResult b = Train(env_b, TinyTrain());
  EXPECT_EQ(MetricsCsv(a.metrics), MetricsCsv(b.metrics));
  EXPECT_EQ(a.params, b.params);

  TrainConfig other = TinyTrain();
  other.seed = 12;
  BridgeSpanEnv env_c(TinyEnv());
  EXPECT_NE(MetricsCsv(Train(env_c, other).metrics), MetricsCsv(a.metrics));
}

TEST(DqnTrainerTest, MetricsRowsAreConsistent) {
  BridgeSpanEnv env(TinyEnv());
  const TrainConfig config = TinyTrain();
  const TrainResult result = Train(env, config);
  ASSERT_EQ(result.metrics.episodes.size(), 4u);
  int trained = 0;
  for (std::size_t i = 0; i < result.metrics.episodes.size(); ++i) {
    const EpisodeMetrics& m = result.metrics.episodes[i];
    EXPECT_EQ(m.episode, static_cast<int>(i) + 1);
    EXPECT_EQ(m.total_steps, 40 * m.episode);
    EXPECT_DOUBLE_EQ(m.epsilon, EpsilonAt(config, m.total_steps));
    EXPECT_GE(m.mean_loss, 0.0);
    EXPECT_LT(m.episode_return, 0.0);
    trained += m.train_steps;
  }
  // Training starts once 50 transitions are stored: steps 50..160.
  EXPECT_EQ(trained, 160 - 50 + 1);
  EXPECT_EQ(result.metrics.episodes[0].train_steps, 0);
  EXPECT_EQ(result.metrics.episodes[0].mean_loss, 0.0);
}

TEST(DqnTrainerTest, TargetChangesOnlyAtSync) {
  BridgeSpanEnv env(TinyEnv());
  DqnTrainer trainer(env, TinyTrain());
  QTable last = trainer.target_table();
  std::int64_t last_sync = trainer.sync_count();
  int changes = 0;
  for (int i = 0; i < 120; ++i) {
    trainer.EnvStep();
    if (trainer.sync_count() == last_sync) {
      ASSERT_EQ(trainer.target_table(), last) << "env step " << i;
    } else {
      ++changes;
      last = trainer.target_table();
      last_sync = trainer.sync_count();
    }
  }
  EXPECT_GT(changes, 0);
  // The target matches a fresh evaluation of the online network after sync.
  while (trainer.train_steps() % 7 != 0 || trainer.train_steps() == 0) trainer.EnvStep();
  EXPECT_EQ(trainer.target_table(),
            ComputeQTable(trainer.network(), trainer.online_params(),
                          trainer.encoder()));
}

TEST(DqnTrainerTest, ReplayHoldsRecentTransitions) {
  BridgeSpanEnv env(TinyEnv());
  TrainConfig config = TinyTrain();
  DqnTrainer trainer(env, config);
  for (int i = 0; i < 130; ++i) trainer.EnvStep();
  ASSERT_EQ(trainer.replay().size(), 100u);
  for (std::size_t i = 0; i + 1 < trainer.replay().size(); ++i) {
    const Transition& t = trainer.replay().At(i);
    const Transition& next = trainer.replay().At(i + 1);
    EXPECT_DOUBLE_EQ(t.reward, env.Reward(GridState{t.next_state}));
    EXPECT_EQ(env.Transition(GridState{t.state}, static_cast<Action>(t.action)),
              GridState{t.next_state});
    if (!t.done) {
      EXPECT_EQ(next.state, t.next_state);
    }
  }
}

TEST(MetricsCsvTest, Format) {
  TrainMetrics m;
  m.episodes.push_back({1, 200, 0.9962, 0.0, -2500000.125, 0});
  m.episodes.push_back({2, 400, 0.5, 0.0123456789, -1.5, 12});
  EXPECT_EQ(MetricsCsv(m),
            "episode,total_steps,epsilon,mean_loss,episode_return\n"
            "1,200,0.996200,0,-2500000.1250\n"
            "2,400,0.500000,0.0123456789,-1.5000\n");
}

class RolloutTest : public ::testing::Test {
 protected:
  BridgeSpanEnv env_;
  ValueIterationResult oracle_ = ValueIteration(env_, 0.95, 1e-4, 1e-10);
};

TEST_F(RolloutTest, OptimalStartHolds) {
  const EpisodeTrace trace = GreedyRollout(oracle_.AsPolicy(), env_, GridState{3}, 200);
  ASSERT_EQ(trace.states.size(), 1u);
  EXPECT_EQ(trace.end(), GridState{3});
}

TEST_F(RolloutTest, FarStartReachesOptimum) {
  const EpisodeTrace trace =
      GreedyRollout(oracle_.AsPolicy(), env_, GridState{138}, 200);
  EXPECT_EQ(trace.start(), GridState{138});
  EXPECT_EQ(trace.end(), GridState{3});
  EXPECT_LE(trace.states.size(), 201u);
}

TEST_F(RolloutTest, LengthIsBounded) {
  const Policy right = [](GridState) { return Action::kRight; };
  for (int max_len : {0, 1, 5, 200}) {
    const EpisodeTrace trace = GreedyRollout(right, env_, GridState{0}, max_len);
    EXPECT_LE(trace.states.size(), static_cast<std::size_t>(max_len) + 1);
  }
  EXPECT_EQ(GreedyRollout(right, env_, GridState{0}, 200).end(), GridState{79});
  EXPECT_THROW(GreedyRollout(right, env_, GridState{240}, 10), ArgumentError);
}

TEST_F(RolloutTest, QTablePolicyMatchesOracle) {
  QTable table(env_.num_states());
  for (int s = 0; s < env_.num_states(); ++s) {
    for (int a = 0; a < kNumActions; ++a) {
      table.MutableRow(s)[a] = static_cast<float>(oracle_.q[s][a]);
    }
  }
  EXPECT_EQ(EndpointCoverage(GreedyPolicy(table), env_, GridState{3}, 200), 240);
}

TEST_F(RolloutTest, NetworkRolloutUsesArgmax) {
  EnvConfig config;
  config.cell_pixels = 1;
  BridgeSpanEnv env(config);
  const NetworkSpec spec = GridQNetworkSpec(3, 80, 1);
  const QNetwork<float> net(spec);
  ParameterSet<float> params = ParameterSet<float>::Zeros(spec);
  // Zero weights with a RIGHT bias walks to the right edge and stops.
  params.layers.back().biases[ActionCode(Action::kRight)] = 1.0f;
  const EpisodeTrace trace = GreedyRollout(net, params, env, GridState{160}, 200);
  EXPECT_EQ(trace.end(), GridState{239});
  EXPECT_EQ(trace.states.size(), 80u);
}

}  // namespace
}  // namespace bridgespan
