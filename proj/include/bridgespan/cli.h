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

#ifndef BRIDGESPAN_CLI_H_
#define BRIDGESPAN_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "bridgespan/run_config.h"

namespace bridgespan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

struct CommandOptions {
  RunConfig config;
  // Output subdirectory under config.output_dir; a timestamp when empty.
  std::string name;
  std::filesystem::path checkpoint;
  std::optional<int> start;
};

// Each command prints its report to `out`, diagnostics to `err`, and
// returns a process exit code.
int Analyze(const CommandOptions& options, std::ostream& out, std::ostream& err);
int TrainCommand(const CommandOptions& options, std::ostream& out,
                 std::ostream& err);
int Eval(const CommandOptions& options, std::ostream& out, std::ostream& err);
int Oracle(const CommandOptions& options, std::ostream& out, std::ostream& err);

// config.output_dir / (name or a timestamp).
std::filesystem::path RunDirectory(const CommandOptions& options);

inline constexpr char kCheckpointFile[] = "checkpoint.bsqn";
inline constexpr char kMetricsFile[] = "metrics.csv";

// Entry point shared by the executable: parses argv, loads the config and
// dispatches. Returns the exit code.
int Main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bridgespan::cli

#endif  // BRIDGESPAN_CLI_H_
