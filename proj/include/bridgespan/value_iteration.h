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

#ifndef BRIDGESPAN_VALUE_ITERATION_H_
#define BRIDGESPAN_VALUE_ITERATION_H_

#include <array>
#include <vector>

#include "bridgespan/dqn_agent.h"
#include "bridgespan/environment.h"

namespace bridgespan {

struct ValueIterationResult {
  std::vector<double> values;
  std::vector<std::array<double, kNumActions>> q;
  std::vector<Action> policy;  // greedy, ties to the lowest action code
  int iterations = 0;

  Policy AsPolicy() const;
};

// Exact Bellman iteration on the deterministic gridworld with rewards
// scaled by `reward_scale`:
//   V(s) <- max_a [ scale * reward(T(s, a)) + gamma * V(T(s, a)) ]
// until the max-norm change drops below `tol`. gamma must lie in [0, 1).
ValueIterationResult ValueIteration(const BridgeSpanEnv& env, double gamma,
                                    double reward_scale, double tol,
                                    int max_iterations = 1'000'000);

}  // namespace bridgespan

#endif  // BRIDGESPAN_VALUE_ITERATION_H_
