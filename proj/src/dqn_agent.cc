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

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "bridgespan/errors.h"
#include "bridgespan/float_env.h"

namespace bridgespan {
namespace {

// Observation caches above this many floats are rendered on demand instead.
constexpr std::int64_t kMaxCachedFloats = std::int64_t{16} << 20;

Rng StreamRng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return Rng(seq);
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ArgumentError("gamma must lie in [0, 1]");
  }
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0) ||
      !(epsilon_end >= 0.0 && epsilon_end <= 1.0)) {
    throw ArgumentError("epsilon bounds must lie in [0, 1]");
  }
  if (epsilon_decay_steps < 0) {
    throw ArgumentError("epsilon_decay_steps must be >= 0");
  }
  if (batch_size == 0) throw ArgumentError("batch_size must be positive");
  if (replay_capacity < batch_size) {
    throw ArgumentError("replay_capacity must be >= batch_size");
  }
  if (!(learning_rate > 0.0)) throw ArgumentError("learning_rate must be > 0");
  if (!(reward_scale > 0.0)) throw ArgumentError("reward_scale must be > 0");
  if (target_sync_interval < 1) {
    throw ArgumentError("target_sync_interval must be >= 1");
  }
  if (episodes < 1) throw ArgumentError("episodes must be >= 1");
}

double EpsilonAt(const TrainConfig& config, std::int64_t env_steps) {
  if (config.epsilon_decay_steps <= 0 ||
      env_steps >= config.epsilon_decay_steps) {
    return config.epsilon_end;
  }
  const double frac = static_cast<double>(std::max<std::int64_t>(env_steps, 0)) /
                      static_cast<double>(config.epsilon_decay_steps);
  const double eps =
      config.epsilon_start + (config.epsilon_end - config.epsilon_start) * frac;
  return std::clamp(eps, std::min(config.epsilon_start, config.epsilon_end),
                    std::max(config.epsilon_start, config.epsilon_end));
}

Action ArgmaxAction(std::span<const float> q) {
  if (q.size() != static_cast<std::size_t>(kNumActions)) {
    throw ArgumentError("expected one Q-value per action");
  }
  int best = 0;
  for (int a = 1; a < kNumActions; ++a) {
    if (q[a] > q[best]) best = a;
  }
  return static_cast<Action>(best);
}

Action SelectAction(std::span<const float> q, double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ArgumentError("epsilon must lie in [0, 1]");
  }
  return SelectActionLazy([q] { return q; }, epsilon, rng);
}

ObservationEncoder::ObservationEncoder(const BridgeSpanEnv& env)
    : env_(&env), num_states_(env.num_states()) {
  const EnvConfig& c = env.config();
  size_ = static_cast<std::int64_t>(c.num_materials()) * c.cell_pixels *
          c.num_columns() * c.cell_pixels * 3;
  if (size_ * num_states_ <= kMaxCachedFloats) {
    cache_.resize(static_cast<std::size_t>(size_ * num_states_));
    for (int s = 0; s < num_states_; ++s) {
      const RgbImage image = env.RenderState(GridState{s});
      float* out = cache_.data() + s * size_;
      for (std::int64_t i = 0; i < size_; ++i) {
        out[i] = static_cast<float>(image.bytes()[i]) / 255.0f;
      }
    }
  }
}

void ObservationEncoder::Encode(GridState state, float* out) const {
  if (state.index < 0 || state.index >= num_states_) {
    throw ArgumentError("state index out of range");
  }
  if (!cache_.empty()) {
    const float* src = cache_.data() + state.index * size_;
    std::copy(src, src + size_, out);
    return;
  }
  const RgbImage image = env_->RenderState(state);
  for (std::int64_t i = 0; i < size_; ++i) {
    out[i] = static_cast<float>(image.bytes()[i]) / 255.0f;
  }
}

std::vector<float> ObservationEncoder::Encode(GridState state) const {
  std::vector<float> out(static_cast<std::size_t>(size_));
  Encode(state, out.data());
  return out;
}

float QTable::MaxValue(int state) const {
  const auto row = Row(state);
  return *std::max_element(row.begin(), row.end());
}

QTable ComputeQTable(const QNetwork<float>& net,
                     const ParameterSet<float>& params,
                     const ObservationEncoder& encoder) {
  if (net.num_outputs() != kNumActions) {
    throw ArgumentError("Q-network must have one output per action");
  }
  constexpr int kChunk = 32;
  const int n = encoder.num_states();
  QTable table(n);
  ForwardCache<float> cache;
  std::vector<float> inputs;
  for (int begin = 0; begin < n; begin += kChunk) {
    const int count = std::min(kChunk, n - begin);
    inputs.resize(static_cast<std::size_t>(count * encoder.size()));
    for (int k = 0; k < count; ++k) {
      encoder.Encode(GridState{begin + k}, inputs.data() + k * encoder.size());
    }
    const auto q = net.Forward(params, inputs, count, cache);
    for (int k = 0; k < count; ++k) {
      std::copy_n(q.data() + k * kNumActions, kNumActions,
                  table.MutableRow(begin + k).data());
    }
  }
  return table;
}

std::vector<double> ComputeTargets(std::span<const Transition> batch,
                                   const QTable& target, double gamma,
                                   double reward_scale) {
  std::vector<double> y;
  y.reserve(batch.size());
  for (const Transition& t : batch) {
    y.push_back(t.reward * reward_scale +
                gamma * static_cast<double>(target.MaxValue(t.next_state)));
  }
  return y;
}

double TrainStep(const QNetwork<float>& net, ParameterSet<float>& params,
                 AdamState& adam, std::span<const float> inputs,
                 std::span<const int> actions, std::span<const double> targets,
                 TrainWorkspace& ws) {
  const int batch = static_cast<int>(actions.size());
  if (batch < 1 || targets.size() != actions.size()) {
    throw ArgumentError("train step needs one target per action");
  }
  const int outputs = net.num_outputs();
  const auto q = net.Forward(params, inputs, batch, ws.cache);
  ws.d_output.assign(static_cast<std::size_t>(batch) * outputs, 0.0f);
  double loss = 0.0;
  for (int n = 0; n < batch; ++n) {
    if (actions[n] < 0 || actions[n] >= outputs) {
      throw ArgumentError("action index outside the network outputs");
    }
    const std::size_t k = static_cast<std::size_t>(n) * outputs + actions[n];
    const double residual = static_cast<double>(q[k]) - targets[n];
    loss += residual * residual;
    ws.d_output[k] = static_cast<float>(2.0 * residual / batch);
  }
  loss /= batch;
  net.Backward(params, ws.cache, ws.d_output, ws.grads);
  AdamStep(params, ws.grads, adam);
  return loss;
}

void WriteMetricsCsv(const TrainMetrics& metrics, std::ostream& out) {
  out << kMetricsCsvHeader << '\n';
  char line[256];
  for (const EpisodeMetrics& m : metrics.episodes) {
    std::snprintf(line, sizeof(line), "%d,%lld,%.6f,%.9g,%.4f\n", m.episode,
                  static_cast<long long>(m.total_steps), m.epsilon,
                  m.mean_loss, m.episode_return);
    out << line;
  }
}

std::string MetricsCsv(const TrainMetrics& metrics) {
  std::ostringstream out;
  WriteMetricsCsv(metrics, out);
  return out.str();
}

DqnTrainer::DqnTrainer(BridgeSpanEnv& env, TrainConfig config)
    : env_(env),
      config_(config),
      net_(GridQNetworkSpec(env.config().num_materials(),
                            env.config().num_columns(),
                            env.config().cell_pixels, kNumActions)),
      encoder_(env),
      online_(InitParameters(net_.spec(), config.seed)),
      replay_(config.replay_capacity),
      action_rng_(StreamRng(config.seed, 1)),
      replay_rng_(StreamRng(config.seed, 2)) {
  config_.Validate();
  adam_ = AdamState::For(online_, AdamConfig{config_.learning_rate});
  target_ = ComputeQTable(net_, online_, encoder_);
  act_input_.resize(static_cast<std::size_t>(encoder_.size()));
}

void DqnTrainer::SyncTarget() {
  target_ = ComputeQTable(net_, online_, encoder_);
  ++sync_count_;
}

std::span<const float> DqnTrainer::OnlineQ(GridState state) {
  encoder_.Encode(state, act_input_.data());
  return net_.Forward(online_, act_input_, 1, act_cache_);
}

void DqnTrainer::EnvStep() {
  const ScopedFlushDenormals flush;
  if (!episode_open_) {
    const ResetResult r = metrics_.episodes.empty() && env_steps_ == 0
                              ? env_.Reset(config_.seed)
                              : env_.Reset();
    state_ = r.state;
    episode_open_ = true;
    episode_return_ = 0.0;
    episode_loss_ = 0.0;
    episode_train_steps_ = 0;
  }

  const double eps = EpsilonAt(config_, env_steps_);
  const Action action =
      SelectActionLazy([&] { return OnlineQ(state_); }, eps, action_rng_);
  const StepResult step = env_.Step(action);
  replay_.Push({state_.index, ActionCode(action), step.reward,
                step.next_state.index, step.done});
  ++env_steps_;
  episode_return_ += step.reward;
  state_ = step.next_state;

  if (replay_.size() >= std::max(config_.warmup, config_.batch_size)) {
    const std::vector<Transition> batch =
        replay_.Sample(config_.batch_size, replay_rng_);
    const std::vector<double> targets =
        ComputeTargets(batch, target_, config_.gamma, config_.reward_scale);
    std::vector<int> actions;
    actions.reserve(batch.size());
    batch_inputs_.resize(batch.size() * static_cast<std::size_t>(encoder_.size()));
    for (std::size_t n = 0; n < batch.size(); ++n) {
      encoder_.Encode(GridState{batch[n].state},
                      batch_inputs_.data() + n * encoder_.size());
      actions.push_back(batch[n].action);
    }
    episode_loss_ +=
        TrainStep(net_, online_, adam_, batch_inputs_, actions, targets,
                  workspace_);
    ++episode_train_steps_;
    ++train_steps_;
    if (train_steps_ % config_.target_sync_interval == 0) SyncTarget();
  }

  if (step.done) {
    EpisodeMetrics m;
    m.episode = static_cast<int>(metrics_.episodes.size()) + 1;
    m.total_steps = env_steps_;
    m.epsilon = EpsilonAt(config_, env_steps_);
    m.mean_loss = episode_train_steps_ > 0
                      ? episode_loss_ / episode_train_steps_
                      : 0.0;
    m.episode_return = episode_return_;
    m.train_steps = episode_train_steps_;
    metrics_.episodes.push_back(m);
    episode_open_ = false;
  }
}

EpisodeMetrics DqnTrainer::RunEpisode() {
  const std::size_t before = metrics_.episodes.size();
  while (metrics_.episodes.size() == before) EnvStep();
  return metrics_.episodes.back();
}

TrainMetrics DqnTrainer::Run(
    const std::function<void(const EpisodeMetrics&)>& on_episode) {
  const ScopedFlushDenormals flush;
  while (static_cast<int>(metrics_.episodes.size()) < config_.episodes) {
    const EpisodeMetrics m = RunEpisode();
    if (on_episode) on_episode(m);
  }
  return metrics_;
}

TrainResult Train(BridgeSpanEnv& env, const TrainConfig& config,
                  const std::function<void(const EpisodeMetrics&)>&
                      on_episode) {
  DqnTrainer trainer(env, config);
  TrainResult result;
  result.metrics = trainer.Run(on_episode);
  result.spec = trainer.spec();
  result.params = trainer.online_params();
  return result;
}

Policy GreedyPolicy(const QTable& table) {
  return [table](GridState s) { return table.Greedy(s.index); };
}

EpisodeTrace GreedyRollout(const Policy& policy, const BridgeSpanEnv& env,
                           GridState start, int max_len) {
  if (start.index < 0 || start.index >= env.num_states()) {
    throw ArgumentError("rollout start out of range");
  }
  EpisodeTrace trace;
  trace.states.push_back(start);
  GridState s = start;
  for (int t = 0; t < max_len; ++t) {
    const GridState next = env.Transition(s, policy(s));
    if (next == s) break;
    trace.states.push_back(next);
    s = next;
  }
  return trace;
}

EpisodeTrace GreedyRollout(const QNetwork<float>& net,
                           const ParameterSet<float>& params,
                           const BridgeSpanEnv& env, GridState start,
                           int max_len) {
  const ObservationEncoder encoder(env);
  ForwardCache<float> cache;
  std::vector<float> input(static_cast<std::size_t>(encoder.size()));
  const Policy policy = [&](GridState s) {
    encoder.Encode(s, input.data());
    return ArgmaxAction(net.Forward(params, input, 1, cache));
  };
  return GreedyRollout(policy, env, start, max_len);
}

int EndpointCoverage(const Policy& policy, const BridgeSpanEnv& env,
                     GridState goal, int max_len) {
  int hits = 0;
  for (int s = 0; s < env.num_states(); ++s) {
    if (GreedyRollout(policy, env, GridState{s}, max_len).end() == goal) ++hits;
  }
  return hits;
}

}  // namespace bridgespan
