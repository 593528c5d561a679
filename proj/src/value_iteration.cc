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

#include "bridgespan/value_iteration.h"

#include <algorithm>
#include <cmath>

#include "bridgespan/errors.h"

namespace bridgespan {

Policy ValueIterationResult::AsPolicy() const {
  return [table = policy](GridState s) { return table.at(s.index); };
}

ValueIterationResult ValueIteration(const BridgeSpanEnv& env, double gamma,
                                    double reward_scale, double tol,
                                    int max_iterations) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ArgumentError("value iteration needs 0 <= gamma < 1");
  }
  if (!(tol > 0.0)) throw ArgumentError("value iteration needs tol > 0");
  const int n = env.num_states();

  std::vector<std::array<int, kNumActions>> next(n);
  std::vector<double> reward(n);
  for (int s = 0; s < n; ++s) {
    reward[s] = reward_scale * env.Reward(GridState{s});
    for (int a = 0; a < kNumActions; ++a) {
      next[s][a] = env.Transition(GridState{s}, kAllActions[a]).index;
    }
  }

  ValueIterationResult out;
  out.values.assign(n, 0.0);
  out.q.resize(n);
  std::vector<double> updated(n);
  for (out.iterations = 1; out.iterations <= max_iterations; ++out.iterations) {
    double delta = 0.0;
    for (int s = 0; s < n; ++s) {
      double best = -INFINITY;
      for (int a = 0; a < kNumActions; ++a) {
        const int t = next[s][a];
        best = std::max(best, reward[t] + gamma * out.values[t]);
      }
      updated[s] = best;
      delta = std::max(delta, std::abs(best - out.values[s]));
    }
    out.values.swap(updated);
    if (delta < tol) break;
  }

  out.policy.resize(n);
  for (int s = 0; s < n; ++s) {
    int best = 0;
    for (int a = 0; a < kNumActions; ++a) {
      const int t = next[s][a];
      out.q[s][a] = reward[t] + gamma * out.values[t];
      if (out.q[s][a] > out.q[s][best]) best = a;
    }
    out.policy[s] = kAllActions[best];
  }
  return out;
}

}  // namespace bridgespan
