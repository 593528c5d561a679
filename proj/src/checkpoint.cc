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

#include "bridgespan/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "bridgespan/errors.h"

namespace bridgespan {
namespace {

static_assert(sizeof(float) == 4);

void PutU8(std::string& out, std::uint8_t v) {
  out.push_back(static_cast<char>(v));
}

void PutU16(std::string& out, std::uint16_t v) {
  PutU8(out, static_cast<std::uint8_t>(v & 0xff));
  PutU8(out, static_cast<std::uint8_t>(v >> 8));
}

void PutF32(std::string& out, float f) {
  const auto bits = std::bit_cast<std::uint32_t>(f);
  for (int i = 0; i < 4; ++i) {
    PutU8(out, static_cast<std::uint8_t>((bits >> (8 * i)) & 0xff));
  }
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint16_t U16() {
    const std::uint16_t lo = U8();
    const std::uint16_t hi = U8();
    return static_cast<std::uint16_t>(lo | (hi << 8));
  }
  float F32() {
    std::uint32_t bits = 0;
    for (int i = 0; i < 4; ++i) {
      bits |= static_cast<std::uint32_t>(U8()) << (8 * i);
    }
    return std::bit_cast<float>(bits);
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  void Need(std::size_t n) const {
    if (remaining() < n) throw FormatError("checkpoint truncated");
  }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

std::uint16_t CheckedU16(int v) {
  if (v < 0 || v > 0xffff) {
    throw ArgumentError("dimension does not fit the checkpoint format");
  }
  return static_cast<std::uint16_t>(v);
}

}  // namespace

std::string EncodeCheckpoint(const ParameterSet<float>& params) {
  std::string out(kCheckpointMagic, 4);
  PutU16(out, kCheckpointVersion);
  PutU16(out, CheckedU16(static_cast<int>(params.layers.size())));
  for (const auto& l : params.layers) {
    PutU8(out, static_cast<std::uint8_t>(l.kind));
    for (int d : l.shape.dims) PutU16(out, CheckedU16(d));
  }
  out.reserve(out.size() + static_cast<std::size_t>(params.size()) * 4);
  for (const auto& l : params.layers) {
    for (float w : l.weights) PutF32(out, w);
    for (float b : l.biases) PutF32(out, b);
  }
  return out;
}

ParameterSet<float> DecodeCheckpoint(const std::string& bytes) {
  Reader in(bytes);
  in.Need(4);
  if (std::memcmp(bytes.data(), kCheckpointMagic, 4) != 0) {
    throw FormatError("bad checkpoint magic");
  }
  for (int i = 0; i < 4; ++i) in.U8();
  const std::uint16_t version = in.U16();
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " +
                      std::to_string(version));
  }
  const std::uint16_t count = in.U16();
  ParameterSet<float> params;
  std::int64_t total = 0;
  for (int i = 0; i < count; ++i) {
    LayerParams<float> l;
    const std::uint8_t kind = in.U8();
    if (kind > static_cast<std::uint8_t>(LayerKind::kDense)) {
      throw FormatError("unknown layer kind " + std::to_string(kind));
    }
    l.kind = static_cast<LayerKind>(kind);
    for (int& d : l.shape.dims) d = in.U16();
    const bool has_params = l.kind != LayerKind::kFlatten;
    if (has_params != (l.shape.weight_count() > 0)) {
      throw FormatError("layer shape inconsistent with its kind");
    }
    total += l.shape.weight_count() + l.shape.bias_count();
    params.layers.push_back(std::move(l));
  }
  if (static_cast<std::int64_t>(in.remaining()) != total * 4) {
    throw FormatError("checkpoint payload holds " +
                      std::to_string(in.remaining()) + " bytes, expected " +
                      std::to_string(total * 4));
  }
  for (auto& l : params.layers) {
    l.weights.resize(static_cast<std::size_t>(l.shape.weight_count()));
    l.biases.resize(static_cast<std::size_t>(l.shape.bias_count()));
    for (float& w : l.weights) w = in.F32();
    for (float& b : l.biases) b = in.F32();
  }
  return params;
}

void SaveCheckpoint(const ParameterSet<float>& params, const NetworkSpec& spec,
                    const std::filesystem::path& path) {
  if (!params.MatchesSpec(spec)) {
    throw ArgumentError("parameters do not match the network spec");
  }
  const std::string bytes = EncodeCheckpoint(params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

ParameterSet<float> LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open checkpoint " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return DecodeCheckpoint(bytes);
}

ParameterSet<float> LoadCheckpoint(const std::filesystem::path& path,
                                   const NetworkSpec& spec) {
  ParameterSet<float> params = LoadCheckpoint(path);
  if (!params.MatchesSpec(spec)) {
    throw FormatError("checkpoint " + path.string() +
                      " does not match the network spec");
  }
  return params;
}

}  // namespace bridgespan
