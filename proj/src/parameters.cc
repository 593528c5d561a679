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

#include "bridgespan/parameters.h"

#include <random>

namespace bridgespan {

double InitLimit(const NetworkSpec& spec, std::size_t i) {
  const WeightShape w = spec.WeightShapes().at(i);
  const LayerSpec& layer = spec.layers.at(i);
  double fan_in = 0.0;
  double fan_out = 0.0;
  if (layer.kind == LayerKind::kConv) {
    const double field = static_cast<double>(w.dims[2]) * w.dims[3];
    fan_in = field * w.dims[1];
    fan_out = field * w.dims[0];
  } else if (layer.kind == LayerKind::kDense) {
    fan_in = w.dims[1];
    fan_out = w.dims[0];
  } else {
    return 0.0;
  }
  if (layer.activation == Activation::kRelu) return std::sqrt(6.0 / fan_in);
  return std::sqrt(6.0 / (fan_in + fan_out));
}

ParameterSet<float> InitParameters(const NetworkSpec& spec,
                                   std::uint64_t seed) {
  ParameterSet<float> params = ParameterSet<float>::Zeros(spec);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    if (params.layers[i].weights.empty()) continue;
    const auto limit = static_cast<float>(InitLimit(spec, i));
    std::uniform_real_distribution<float> dist(-limit, limit);
    for (float& w : params.layers[i].weights) w = dist(rng);
  }
  return params;
}

}  // namespace bridgespan
