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

#ifndef BRIDGESPAN_DQN_AGENT_H_
#define BRIDGESPAN_DQN_AGENT_H_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "bridgespan/adam.h"
#include "bridgespan/environment.h"
#include "bridgespan/network_spec.h"
#include "bridgespan/parameters.h"
#include "bridgespan/q_network.h"
#include "bridgespan/replay_buffer.h"

namespace bridgespan {

struct TrainConfig {
  double gamma = 0.95;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::int64_t epsilon_decay_steps = 50000;
  std::size_t replay_capacity = 20000;
  std::size_t warmup = 1000;
  std::size_t batch_size = 32;
  double learning_rate = 1e-4;
  // Applied to raw rewards before targets are formed.
  double reward_scale = 1e-4;
  // In training steps; 1 means the online network bootstraps itself.
  std::int64_t target_sync_interval = 500;
  int episodes = 300;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Linear decay from epsilon_start to epsilon_end over epsilon_decay_steps
// environment steps, constant afterwards.
double EpsilonAt(const TrainConfig& config, std::int64_t env_steps);

// Greedy action, ties to the lowest action code.
Action ArgmaxAction(std::span<const float> q);

// With probability epsilon a uniform random action, otherwise the argmax.
// `q` is only consulted on the greedy branch, so callers can defer the
// network evaluation.
template <typename QFn>
Action SelectActionLazy(QFn&& q, double epsilon, Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon) {
    std::uniform_int_distribution<int> pick(0, kNumActions - 1);
    return static_cast<Action>(pick(rng));
  }
  return ArgmaxAction(q());
}

Action SelectAction(std::span<const float> q, double epsilon, Rng& rng);

// Normalised (byte / 255) rendered observation of every state, in the
// channels-last layout the network consumes.
class ObservationEncoder {
 public:
  explicit ObservationEncoder(const BridgeSpanEnv& env);

  std::int64_t size() const { return size_; }
  int num_states() const { return num_states_; }
  void Encode(GridState state, float* out) const;
  std::vector<float> Encode(GridState state) const;

 private:
  const BridgeSpanEnv* env_;
  std::int64_t size_ = 0;
  int num_states_ = 0;
  // Filled when small enough to keep every state resident.
  std::vector<float> cache_;
};

// Q-values of every state under fixed parameters.
class QTable {
 public:
  QTable() = default;
  explicit QTable(int num_states)
      : values_(static_cast<std::size_t>(num_states) * kNumActions, 0.0f) {}

  int num_states() const {
    return static_cast<int>(values_.size() / kNumActions);
  }
  std::span<const float> Row(int state) const {
    return {values_.data() + static_cast<std::size_t>(state) * kNumActions,
            kNumActions};
  }
  std::span<float> MutableRow(int state) {
    return {values_.data() + static_cast<std::size_t>(state) * kNumActions,
            kNumActions};
  }
  float MaxValue(int state) const;
  Action Greedy(int state) const { return ArgmaxAction(Row(state)); }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::vector<float> values_;
};

QTable ComputeQTable(const QNetwork<float>& net,
                     const ParameterSet<float>& params,
                     const ObservationEncoder& encoder);

// y = reward * reward_scale + gamma * max_a Q_target(next_state, a). The
// done flag marks the step budget, not a terminal state, so bootstrapping
// continues through it.
std::vector<double> ComputeTargets(std::span<const Transition> batch,
                                   const QTable& target, double gamma,
                                   double reward_scale);

struct TrainWorkspace {
  ForwardCache<float> cache;
  ParameterSet<float> grads;
  std::vector<float> d_output;
};

// One Adam step on the mean squared error between Q(s_n, a_n) and y_n over
// the batch. Only the taken-action outputs receive gradient. Returns the
// loss before the update.
double TrainStep(const QNetwork<float>& net, ParameterSet<float>& params,
                 AdamState& adam, std::span<const float> inputs,
                 std::span<const int> actions, std::span<const double> targets,
                 TrainWorkspace& workspace);

struct EpisodeMetrics {
  int episode = 0;
  std::int64_t total_steps = 0;
  double epsilon = 0.0;
  // 0 when the episode ran no training step (see train_steps).
  double mean_loss = 0.0;
  double episode_return = 0.0;
  int train_steps = 0;
};

struct TrainMetrics {
  std::vector<EpisodeMetrics> episodes;
};

inline constexpr char kMetricsCsvHeader[] =
    "episode,total_steps,epsilon,mean_loss,episode_return";

void WriteMetricsCsv(const TrainMetrics& metrics, std::ostream& out);
std::string MetricsCsv(const TrainMetrics& metrics);

// Online/target networks, replay and optimiser state for one training run.
// The target network is held as its Q-table over all states: it is constant
// between syncs and states are the only inputs it is ever evaluated on.
class DqnTrainer {
 public:
  DqnTrainer(BridgeSpanEnv& env, TrainConfig config);

  // One environment step: act, store, and train once the warmup is met.
  void EnvStep();
  EpisodeMetrics RunEpisode();
  TrainMetrics Run(const std::function<void(const EpisodeMetrics&)>&
                       on_episode = {});

  const NetworkSpec& spec() const { return net_.spec(); }
  const QNetwork<float>& network() const { return net_; }
  const ParameterSet<float>& online_params() const { return online_; }
  const QTable& target_table() const { return target_; }
  const ReplayBuffer& replay() const { return replay_; }
  const ObservationEncoder& encoder() const { return encoder_; }
  std::int64_t env_steps() const { return env_steps_; }
  std::int64_t train_steps() const { return train_steps_; }
  std::int64_t sync_count() const { return sync_count_; }
  const TrainMetrics& metrics() const { return metrics_; }

 private:
  void SyncTarget();
  std::span<const float> OnlineQ(GridState state);

  BridgeSpanEnv& env_;
  TrainConfig config_;
  QNetwork<float> net_;
  ObservationEncoder encoder_;
  ParameterSet<float> online_;
  QTable target_;
  AdamState adam_;
  ReplayBuffer replay_;
  Rng action_rng_;
  Rng replay_rng_;
  TrainWorkspace workspace_;
  ForwardCache<float> act_cache_;
  std::vector<float> act_input_;
  std::vector<float> batch_inputs_;

  GridState state_;
  bool episode_open_ = false;
  std::int64_t env_steps_ = 0;
  std::int64_t train_steps_ = 0;
  std::int64_t sync_count_ = 0;
  double episode_return_ = 0.0;
  double episode_loss_ = 0.0;
  int episode_train_steps_ = 0;
  TrainMetrics metrics_;
};

struct TrainResult {
  NetworkSpec spec;
  ParameterSet<float> params;
  TrainMetrics metrics;
};

TrainResult Train(BridgeSpanEnv& env, const TrainConfig& config,
                  const std::function<void(const EpisodeMetrics&)>&
                      on_episode = {});

using Policy = std::function<Action(GridState)>;

Policy GreedyPolicy(const QTable& table);

// Follows `policy` from `start` for at most max_len steps. Stops early at a
// fixed point (the state no longer changes), since a deterministic policy
// then holds it forever.
EpisodeTrace GreedyRollout(const Policy& policy, const BridgeSpanEnv& env,
                           GridState start, int max_len);

EpisodeTrace GreedyRollout(const QNetwork<float>& net,
                           const ParameterSet<float>& params,
                           const BridgeSpanEnv& env, GridState start,
                           int max_len);

// Number of start states whose rollout ends at `goal`.
int EndpointCoverage(const Policy& policy, const BridgeSpanEnv& env,
                     GridState goal, int max_len);

}  // namespace bridgespan

#endif  // BRIDGESPAN_DQN_AGENT_H_
