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

#include "bridgespan/q_network.h"

#include <Eigen/Core>
#include <algorithm>
#include <string>

#include "bridgespan/errors.h"

namespace bridgespan {
namespace {

template <typename Scalar>
using RowMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using MatMap = Eigen::Map<RowMatrix<Scalar>>;
template <typename Scalar>
using ConstMatMap = Eigen::Map<const RowMatrix<Scalar>>;
template <typename Scalar>
using ConstVecMap = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>;

// Patch column order is [channel][ky][kx], matching the weight layout.
template <typename Scalar>
void Im2Col(const Scalar* x, const TensorShape& in, const TensorShape& out,
            int kernel, int stride, int batch, Scalar* patches) {
  const int k2 = kernel * kernel;
  const std::int64_t cols = static_cast<std::int64_t>(in.channels) * k2;
  for (int n = 0; n < batch; ++n) {
    const Scalar* xn = x + n * in.size();
    for (int oy = 0; oy < out.height; ++oy) {
      for (int ox = 0; ox < out.width; ++ox) {
        Scalar* row = patches +
                      ((static_cast<std::int64_t>(n) * out.height + oy) *
                           out.width + ox) * cols;
        for (int ky = 0; ky < kernel; ++ky) {
          const Scalar* src =
              xn + (static_cast<std::int64_t>(oy * stride + ky) * in.width +
                    ox * stride) * in.channels;
          for (int kx = 0; kx < kernel; ++kx) {
            for (int c = 0; c < in.channels; ++c) {
              row[c * k2 + ky * kernel + kx] = src[kx * in.channels + c];
            }
          }
        }
      }
    }
  }
}

// Scatter-add inverse of Im2Col.
template <typename Scalar>
void Col2Im(const Scalar* patches, const TensorShape& in,
            const TensorShape& out, int kernel, int stride, int batch,
            Scalar* dx) {
  const int k2 = kernel * kernel;
  const std::int64_t cols = static_cast<std::int64_t>(in.channels) * k2;
  std::fill(dx, dx + batch * in.size(), Scalar(0));
  for (int n = 0; n < batch; ++n) {
    Scalar* dxn = dx + n * in.size();
    for (int oy = 0; oy < out.height; ++oy) {
      for (int ox = 0; ox < out.width; ++ox) {
        const Scalar* row =
            patches + ((static_cast<std::int64_t>(n) * out.height + oy) *
                           out.width + ox) * cols;
        for (int ky = 0; ky < kernel; ++ky) {
          Scalar* dst =
              dxn + (static_cast<std::int64_t>(oy * stride + ky) * in.width +
                     ox * stride) * in.channels;
          for (int kx = 0; kx < kernel; ++kx) {
            for (int c = 0; c < in.channels; ++c) {
              dst[kx * in.channels + c] += row[c * k2 + ky * kernel + kx];
            }
          }
        }
      }
    }
  }
}

// Column sums of a row-major rows x cols block, accumulated row by row.
// Eigen's colwise().sum() peels by runtime alignment, which makes the
// rounding depend on where the heap placed the buffer.
template <typename Scalar>
void ColumnSums(const Scalar* m, std::int64_t rows, int cols, Scalar* out) {
  std::fill(out, out + cols, Scalar(0));
  for (std::int64_t r = 0; r < rows; ++r) {
    const Scalar* row = m + r * cols;
    for (int c = 0; c < cols; ++c) out[c] += row[c];
  }
}

template <typename Scalar>
void ApplyActivation(Activation act, std::vector<Scalar>& z) {
  if (act == Activation::kRelu) {
    for (Scalar& v : z) v = v > Scalar(0) ? v : Scalar(0);
  }
}

}  // namespace

template <typename Scalar>
QNetwork<Scalar>::QNetwork(NetworkSpec spec) : spec_(std::move(spec)) {
  shapes_ = spec_.OutputShapes();
  first_param_layer_ = spec_.layers.size();
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    if (spec_.layers[i].kind != LayerKind::kFlatten) {
      first_param_layer_ = i;
      break;
    }
  }
}

template <typename Scalar>
std::span<const Scalar> QNetwork<Scalar>::Forward(
    const ParameterSet<Scalar>& params, std::span<const Scalar> input,
    int batch, ForwardCache<Scalar>& cache) const {
  if (batch < 1 ||
      static_cast<std::int64_t>(input.size()) != batch * input_size()) {
    throw ArgumentError("forward: input holds " + std::to_string(input.size()) +
                        " values, expected " +
                        std::to_string(batch * input_size()));
  }
  if (params.layers.size() != spec_.layers.size()) {
    throw ArgumentError("forward: parameters do not match the network");
  }
  const std::size_t num_layers = spec_.layers.size();
  cache.owner = this;
  cache.batch = batch;
  cache.input.assign(input.begin(), input.end());
  cache.patches.resize(num_layers);
  cache.outputs.resize(num_layers);

  const Scalar* x = cache.input.data();
  TensorShape in_shape = spec_.input;
  for (std::size_t i = 0; i < num_layers; ++i) {
    const LayerSpec& layer = spec_.layers[i];
    const TensorShape& out_shape = shapes_[i];
    std::vector<Scalar>& out = cache.outputs[i];
    out.resize(static_cast<std::size_t>(batch * out_shape.size()));
    switch (layer.kind) {
      case LayerKind::kConv: {
        const auto& lp = params.layers[i];
        const std::int64_t rows =
            static_cast<std::int64_t>(batch) * out_shape.height * out_shape.width;
        const std::int64_t cols =
            static_cast<std::int64_t>(in_shape.channels) * layer.kernel * layer.kernel;
        std::vector<Scalar>& patches = cache.patches[i];
        patches.resize(static_cast<std::size_t>(rows * cols));
        Im2Col(x, in_shape, out_shape, layer.kernel, layer.stride, batch,
               patches.data());
        ConstMatMap<Scalar> p(patches.data(), rows, cols);
        ConstMatMap<Scalar> w(lp.weights.data(), layer.units, cols);
        ConstVecMap<Scalar> b(lp.biases.data(), layer.units);
        MatMap<Scalar> z(out.data(), rows, layer.units);
        z.noalias() = p * w.transpose();
        z.rowwise() += b.transpose();
        break;
      }
      case LayerKind::kFlatten:
        std::copy(x, x + batch * in_shape.size(), out.begin());
        break;
      case LayerKind::kDense: {
        const auto& lp = params.layers[i];
        const auto in_size = static_cast<Eigen::Index>(in_shape.size());
        ConstMatMap<Scalar> xm(x, batch, in_size);
        ConstMatMap<Scalar> w(lp.weights.data(), layer.units, in_size);
        ConstVecMap<Scalar> b(lp.biases.data(), layer.units);
        MatMap<Scalar> z(out.data(), batch, layer.units);
        z.noalias() = xm * w.transpose();
        z.rowwise() += b.transpose();
        break;
      }
    }
    if (layer.kind != LayerKind::kFlatten) ApplyActivation(layer.activation, out);
    x = out.data();
    in_shape = out_shape;
  }
  return {cache.outputs.back().data(), cache.outputs.back().size()};
}

template <typename Scalar>
std::vector<Scalar> QNetwork<Scalar>::Predict(
    const ParameterSet<Scalar>& params, std::span<const Scalar> input) const {
  ForwardCache<Scalar> cache;
  const auto q = Forward(params, input, 1, cache);
  return {q.begin(), q.end()};
}

template <typename Scalar>
void QNetwork<Scalar>::Backward(const ParameterSet<Scalar>& params,
                                ForwardCache<Scalar>& cache,
                                std::span<const Scalar> d_output,
                                ParameterSet<Scalar>& grads) const {
  const std::size_t num_layers = spec_.layers.size();
  if (cache.owner != this || cache.batch < 1 ||
      cache.outputs.size() != num_layers) {
    throw UsageError("backward: cache was not filled by this network");
  }
  const int batch = cache.batch;
  if (static_cast<std::int64_t>(d_output.size()) !=
      static_cast<std::int64_t>(batch) * num_outputs()) {
    throw UsageError("backward: upstream gradient does not match the cache");
  }
  if (!grads.CongruentTo(params)) grads = params;

  // grad_a holds dL/d(output of layer i) on entry to iteration i.
  std::vector<Scalar>& g = cache.grad_a;
  std::vector<Scalar>& g_next = cache.grad_b;
  g.assign(d_output.begin(), d_output.end());

  for (std::size_t idx = num_layers; idx-- > 0;) {
    const LayerSpec& layer = spec_.layers[idx];
    const TensorShape& out_shape = shapes_[idx];
    const TensorShape& in_shape = idx == 0 ? spec_.input : shapes_[idx - 1];
    const Scalar* x = idx == 0 ? cache.input.data() : cache.outputs[idx - 1].data();
    const bool need_input_grad = idx > first_param_layer_;

    if (layer.kind == LayerKind::kFlatten) continue;  // layout is unchanged

    // Through the activation: relu'(z) = [output > 0].
    if (layer.activation == Activation::kRelu) {
      const std::vector<Scalar>& a = cache.outputs[idx];
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (!(a[k] > Scalar(0))) g[k] = Scalar(0);
      }
    }

    const auto& lp = params.layers[idx];
    auto& gp = grads.layers[idx];
    if (layer.kind == LayerKind::kConv) {
      const std::int64_t rows =
          static_cast<std::int64_t>(batch) * out_shape.height * out_shape.width;
      const std::int64_t cols =
          static_cast<std::int64_t>(in_shape.channels) * layer.kernel * layer.kernel;
      ConstMatMap<Scalar> dz(g.data(), rows, layer.units);
      ConstMatMap<Scalar> p(cache.patches[idx].data(), rows, cols);
      MatMap<Scalar> dw(gp.weights.data(), layer.units, cols);
      dw.noalias() = dz.transpose() * p;
      ColumnSums(g.data(), rows, layer.units, gp.biases.data());
      if (need_input_grad) {
        ConstMatMap<Scalar> w(lp.weights.data(), layer.units, cols);
        cache.grad_patches.resize(static_cast<std::size_t>(rows * cols));
        MatMap<Scalar> dp(cache.grad_patches.data(), rows, cols);
        dp.noalias() = dz * w;
        g_next.resize(static_cast<std::size_t>(batch * in_shape.size()));
        Col2Im(cache.grad_patches.data(), in_shape, out_shape, layer.kernel,
               layer.stride, batch, g_next.data());
      }
    } else {
      const auto in_size = static_cast<Eigen::Index>(in_shape.size());
      ConstMatMap<Scalar> dz(g.data(), batch, layer.units);
      ConstMatMap<Scalar> xm(x, batch, in_size);
      MatMap<Scalar> dw(gp.weights.data(), layer.units, in_size);
      dw.noalias() = dz.transpose() * xm;
      ColumnSums(g.data(), batch, layer.units, gp.biases.data());
      if (need_input_grad) {
        ConstMatMap<Scalar> w(lp.weights.data(), layer.units, in_size);
        g_next.resize(static_cast<std::size_t>(batch * in_shape.size()));
        MatMap<Scalar> dx(g_next.data(), batch, in_size);
        dx.noalias() = dz * w;
      }
    }
    if (!need_input_grad) break;
    std::swap(g, g_next);
  }
}

template class QNetwork<float>;
template class QNetwork<double>;

}  // namespace bridgespan
