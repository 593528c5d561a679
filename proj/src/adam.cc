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

#include "bridgespan/adam.h"

#include <algorithm>
#include <cmath>

#include "bridgespan/errors.h"

namespace bridgespan {
namespace {

void UpdateBlock(std::vector<float>& p, const std::vector<float>& g,
                 std::vector<float>& m, std::vector<float>& v, float b1,
                 float b2, float om1, float om2, float inv_c1, float inv_c2,
                 float lr, float eps) {
  const std::size_t n = p.size();
  float* __restrict pp = p.data();
  const float* __restrict gp = g.data();
  float* __restrict mp = m.data();
  float* __restrict vp = v.data();
  for (std::size_t i = 0; i < n; ++i) {
    const float gi = gp[i];
    mp[i] = b1 * mp[i] + om1 * gi;
    vp[i] = b2 * vp[i] + om2 * gi * gi;
    pp[i] -= lr * (mp[i] * inv_c1) / (std::sqrt(vp[i] * inv_c2) + eps);
  }
}

}  // namespace

AdamState AdamState::For(const ParameterSet<float>& params,
                         AdamConfig config) {
  AdamState state;
  state.config = config;
  state.first_moment = params;
  for (auto& l : state.first_moment.layers) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0f);
    std::fill(l.biases.begin(), l.biases.end(), 0.0f);
  }
  state.second_moment = state.first_moment;
  return state;
}

void AdamStep(ParameterSet<float>& params, const ParameterSet<float>& grads,
              AdamState& state) {
  if (!params.CongruentTo(grads) || !params.CongruentTo(state.first_moment) ||
      !params.CongruentTo(state.second_moment)) {
    throw UsageError("adam: parameters, gradients and moments differ in shape");
  }
  ++state.step;
  const AdamConfig& c = state.config;
  const double t = static_cast<double>(state.step);
  const auto inv_c1 = static_cast<float>(1.0 / (1.0 - std::pow(c.beta1, t)));
  const auto inv_c2 = static_cast<float>(1.0 / (1.0 - std::pow(c.beta2, t)));
  const auto b1 = static_cast<float>(c.beta1);
  const auto b2 = static_cast<float>(c.beta2);
  // 1 - beta in double, so the moments and their corrections agree.
  const auto om1 = static_cast<float>(1.0 - c.beta1);
  const auto om2 = static_cast<float>(1.0 - c.beta2);
  const auto lr = static_cast<float>(c.learning_rate);
  const auto eps = static_cast<float>(c.epsilon);
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    auto& p = params.layers[i];
    const auto& g = grads.layers[i];
    auto& m = state.first_moment.layers[i];
    auto& v = state.second_moment.layers[i];
    UpdateBlock(p.weights, g.weights, m.weights, v.weights, b1, b2, om1, om2,
                inv_c1, inv_c2, lr, eps);
    UpdateBlock(p.biases, g.biases, m.biases, v.biases, b1, b2, om1, om2,
                inv_c1, inv_c2, lr, eps);
  }
}

}  // namespace bridgespan
