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

#ifndef BRIDGESPAN_ADAM_H_
#define BRIDGESPAN_ADAM_H_

#include <cstdint>

#include "bridgespan/parameters.h"

namespace bridgespan {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  ParameterSet<float> first_moment;
  ParameterSet<float> second_moment;
  std::int64_t step = 0;

  // Zero moments shaped like `params`.
  static AdamState For(const ParameterSet<float>& params, AdamConfig config);
};

// One bias-corrected Adam update:
//   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2,  t <- t + 1
//   p <- p - lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
// Throws UsageError on shape mismatch.
void AdamStep(ParameterSet<float>& params, const ParameterSet<float>& grads,
              AdamState& state);

}  // namespace bridgespan

#endif  // BRIDGESPAN_ADAM_H_
