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

#ifndef BRIDGESPAN_RUN_CONFIG_H_
#define BRIDGESPAN_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "bridgespan/dqn_agent.h"
#include "bridgespan/environment.h"

namespace bridgespan {

// Everything a CLI command needs. Parsed from flat `key = value` text with
// `#` comments:
//
//   seed, output_dir
//   materials = concrete, composite, steel     (grid rows, top to bottom)
//   material.<name>.{a,b,m,c,r}                (override or define)
//   env.{min_span,max_span,step_length,max_steps,cell_pixels}
//   train.{gamma,epsilon_start,epsilon_end,epsilon_decay_steps,
//          replay_capacity,warmup,batch_size,learning_rate,reward_scale,
//          target_sync_interval,episodes}
//   analyze.{lo,hi,tol}
//   oracle.tol
struct RunConfig {
  EnvConfig env;
  TrainConfig train;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  double analyze_lo = 1.0;
  double analyze_hi = 2000.0;
  double analyze_tol = kDefaultSpanTolerance;
  double oracle_tol = 1e-10;

  // Throws ArgumentError on the first violated invariant.
  void Validate() const;
};

// Throws ArgumentError naming the offending line for unknown keys,
// malformed values or invalid combinations.
RunConfig ParseRunConfig(std::string_view text);
RunConfig LoadRunConfig(const std::filesystem::path& path);

}  // namespace bridgespan

#endif  // BRIDGESPAN_RUN_CONFIG_H_
