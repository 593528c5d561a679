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

#ifndef BRIDGESPAN_Q_NETWORK_H_
#define BRIDGESPAN_Q_NETWORK_H_

#include <cstdint>
#include <span>
#include <vector>

#include "bridgespan/network_spec.h"
#include "bridgespan/parameters.h"

namespace bridgespan {

// Intermediate results of the last Forward call, reused across calls to
// avoid reallocating. Backward reads it.
template <typename Scalar>
struct ForwardCache {
  const void* owner = nullptr;
  int batch = 0;
  std::vector<Scalar> input;
  // Per layer: im2col patches (conv layers only) and post-activation output.
  std::vector<std::vector<Scalar>> patches;
  std::vector<std::vector<Scalar>> outputs;
  // Scratch for backward.
  std::vector<Scalar> grad_a;
  std::vector<Scalar> grad_b;
  std::vector<Scalar> grad_patches;
};

// Strided valid convolutions, relu/linear activations and dense layers over
// channels-last inputs, with exact reverse-mode gradients.
template <typename Scalar>
class QNetwork {
 public:
  explicit QNetwork(NetworkSpec spec);

  const NetworkSpec& spec() const { return spec_; }
  const std::vector<TensorShape>& output_shapes() const { return shapes_; }
  std::int64_t input_size() const { return spec_.input.size(); }
  int num_outputs() const { return shapes_.back().channels; }

  // `input` holds `batch` samples of input_size() values each. Returns
  // batch x num_outputs values, row-major; the span aliases `cache`.
  std::span<const Scalar> Forward(const ParameterSet<Scalar>& params,
                                  std::span<const Scalar> input, int batch,
                                  ForwardCache<Scalar>& cache) const;

  // Single-sample convenience wrapper.
  std::vector<Scalar> Predict(const ParameterSet<Scalar>& params,
                              std::span<const Scalar> input) const;

  // Gradients of sum_{n,k} d_output[n,k] * q[n,k] with respect to every
  // parameter, written into `grads` (resized to match). `cache` must come
  // from a Forward call on this network with the same parameters.
  void Backward(const ParameterSet<Scalar>& params,
                ForwardCache<Scalar>& cache,
                std::span<const Scalar> d_output,
                ParameterSet<Scalar>& grads) const;

 private:
  NetworkSpec spec_;
  std::vector<TensorShape> shapes_;
  // Index of the first layer with parameters; no input gradient is needed
  // at or below it.
  std::size_t first_param_layer_ = 0;
};

extern template class QNetwork<float>;
extern template class QNetwork<double>;

}  // namespace bridgespan

#endif  // BRIDGESPAN_Q_NETWORK_H_
