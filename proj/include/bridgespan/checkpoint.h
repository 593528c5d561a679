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

#ifndef BRIDGESPAN_CHECKPOINT_H_
#define BRIDGESPAN_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "bridgespan/network_spec.h"
#include "bridgespan/parameters.h"

namespace bridgespan {

// Layout, all integers little-endian:
//   "BSQN"  u16 version (=1)  u16 layer count
//   per layer: u8 kind, u16 x 4 weight shape
//   every layer's weights then biases as float32, canonical order.
inline constexpr char kCheckpointMagic[4] = {'B', 'S', 'Q', 'N'};
inline constexpr std::uint16_t kCheckpointVersion = 1;

std::string EncodeCheckpoint(const ParameterSet<float>& params);
// Throws FormatError on bad magic, version, shapes or length. Nothing is
// returned unless the whole payload parsed.
ParameterSet<float> DecodeCheckpoint(const std::string& bytes);

// Throws ArgumentError if `params` does not match `spec`.
void SaveCheckpoint(const ParameterSet<float>& params, const NetworkSpec& spec,
                    const std::filesystem::path& path);
ParameterSet<float> LoadCheckpoint(const std::filesystem::path& path);
// As above, plus a FormatError if the stored shapes do not match `spec`.
ParameterSet<float> LoadCheckpoint(const std::filesystem::path& path,
                                   const NetworkSpec& spec);

}  // namespace bridgespan

#endif  // BRIDGESPAN_CHECKPOINT_H_
