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

#ifndef BRIDGESPAN_PARAMETERS_H_
#define BRIDGESPAN_PARAMETERS_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "bridgespan/errors.h"
#include "bridgespan/network_spec.h"

namespace bridgespan {

// Weights are stored in canonical order: conv [filter][in_channel][ky][kx],
// dense [out][in]. Flatten layers carry no parameters.
template <typename Scalar>
struct LayerParams {
  LayerKind kind = LayerKind::kDense;
  WeightShape shape;
  std::vector<Scalar> weights;
  std::vector<Scalar> biases;

  friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

template <typename Scalar>
struct ParameterSet {
  std::vector<LayerParams<Scalar>> layers;

  static ParameterSet Zeros(const NetworkSpec& spec) {
    ParameterSet out;
    const auto shapes = spec.WeightShapes();
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
      LayerParams<Scalar> layer;
      layer.kind = spec.layers[i].kind;
      layer.shape = shapes[i];
      layer.weights.assign(static_cast<std::size_t>(shapes[i].weight_count()),
                           Scalar(0));
      layer.biases.assign(static_cast<std::size_t>(shapes[i].bias_count()),
                          Scalar(0));
      out.layers.push_back(std::move(layer));
    }
    return out;
  }

  std::int64_t size() const {
    std::int64_t n = 0;
    for (const auto& l : layers) {
      n += static_cast<std::int64_t>(l.weights.size() + l.biases.size());
    }
    return n;
  }

  // Per layer: weights, then biases.
  std::vector<Scalar> Flatten() const {
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (const auto& l : layers) {
      out.insert(out.end(), l.weights.begin(), l.weights.end());
      out.insert(out.end(), l.biases.begin(), l.biases.end());
    }
    return out;
  }

  void Unflatten(std::span<const Scalar> flat) {
    if (static_cast<std::int64_t>(flat.size()) != size()) {
      throw ArgumentError("flat parameter vector has the wrong length");
    }
    std::size_t o = 0;
    for (auto& l : layers) {
      for (auto& w : l.weights) w = flat[o++];
      for (auto& b : l.biases) b = flat[o++];
    }
  }

  // Same layer kinds and tensor shapes.
  template <typename Other>
  bool CongruentTo(const ParameterSet<Other>& other) const {
    if (layers.size() != other.layers.size()) return false;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      if (layers[i].kind != other.layers[i].kind ||
          layers[i].shape != other.layers[i].shape ||
          layers[i].weights.size() != other.layers[i].weights.size() ||
          layers[i].biases.size() != other.layers[i].biases.size()) {
        return false;
      }
    }
    return true;
  }

  bool MatchesSpec(const NetworkSpec& spec) const {
    return CongruentTo(Zeros(spec));
  }

  bool AllFinite() const {
    for (const auto& l : layers) {
      for (Scalar w : l.weights) {
        if (!std::isfinite(w)) return false;
      }
      for (Scalar b : l.biases) {
        if (!std::isfinite(b)) return false;
      }
    }
    return true;
  }

  template <typename To>
  ParameterSet<To> Cast() const {
    ParameterSet<To> out;
    for (const auto& l : layers) {
      LayerParams<To> c;
      c.kind = l.kind;
      c.shape = l.shape;
      c.weights.assign(l.weights.begin(), l.weights.end());
      c.biases.assign(l.biases.begin(), l.biases.end());
      out.layers.push_back(std::move(c));
    }
    return out;
  }

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

// He-uniform weights for relu layers, Glorot-uniform for linear layers,
// zero biases. Deterministic in `seed`.
ParameterSet<float> InitParameters(const NetworkSpec& spec,
                                   std::uint64_t seed);

// Uniform initialisation bound of layer `i` of `spec`.
double InitLimit(const NetworkSpec& spec, std::size_t i);

}  // namespace bridgespan

#endif  // BRIDGESPAN_PARAMETERS_H_
