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

#ifndef BRIDGESPAN_ENVIRONMENT_H_
#define BRIDGESPAN_ENVIRONMENT_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bridgespan/cost_model.h"
#include "bridgespan/image.h"

namespace bridgespan {

enum class Action : int {
  kNoop = 0,
  kUp = 1,
  kDown = 2,
  kLeft = 3,
  kRight = 4,
};

inline constexpr int kNumActions = 5;

inline constexpr Action kAllActions[kNumActions] = {
    Action::kNoop, Action::kUp, Action::kDown, Action::kLeft, Action::kRight};

// Throws ArgumentError for codes outside [0, 4].
Action ActionFromCode(int code);
inline int ActionCode(Action a) { return static_cast<int>(a); }

struct Displacement {
  int d_row = 0;
  int d_span = 0;
};
Displacement ActionDisplacement(Action a, int step_length);

struct EnvConfig {
  int min_span = 10;
  int max_span = 800;
  int step_length = 10;
  int max_steps = 200;
  int cell_pixels = 16;
  // One grid row per material, top to bottom.
  std::vector<MaterialCostParams> materials = {
      ConcreteMaterial(), CompositeMaterial(), SteelMaterial()};

  int num_materials() const { return static_cast<int>(materials.size()); }
  int num_columns() const { return (max_span - min_span) / step_length + 1; }
  int num_states() const { return num_materials() * num_columns(); }

  void Validate() const;
};

// Flat state index, row * num_columns + col.
struct GridState {
  int index = 0;

  friend auto operator<=>(const GridState&, const GridState&) = default;
};

struct GridCoord {
  int row = 0;
  int col = 0;
  int span = 0;  // metres
};

struct StepInfo {
  int row = 0;
  int span = 0;
};

struct ResetResult {
  GridState state;
  StepInfo info;
};

struct StepResult {
  GridState next_state;
  double reward = 0.0;
  bool done = false;
  // Never set; the step budget is reported through `done`.
  bool truncated = false;
  StepInfo info;
};

// Visited states in order; front() is the start, back() the endpoint.
struct EpisodeTrace {
  std::vector<GridState> states;

  GridState start() const { return states.front(); }
  GridState end() const { return states.back(); }
};

// The material x span gridworld. Moving off the grid leaves the blocked
// coordinate unchanged; the reward is the negated unit-area cost of the cell
// reached. Episodes end after max_steps steps.
class BridgeSpanEnv {
 public:
  explicit BridgeSpanEnv(EnvConfig config = {}, std::uint64_t seed = 0);

  ResetResult Reset(std::optional<std::uint64_t> seed = std::nullopt);
  // Puts the agent on `state` with a fresh step budget.
  ResetResult ResetTo(GridState state);
  StepResult Step(Action action);

  GridCoord StateToGrid(int index) const;
  GridState GridToState(int row, int span) const;

  // Deterministic dynamics shared by Step, rollouts and the planner.
  GridState Transition(GridState state, Action action) const;
  double CellCost(GridState state) const;
  double Reward(GridState state) const { return -CellCost(state); }

  RgbImage RenderState(GridState state) const;
  // Start red, intermediate cells blue, endpoint green; later paint wins.
  RgbImage RenderTrajectory(const EpisodeTrace& trace) const;

  // Exhaustive argmin of the cell cost, ties to the lowest index.
  GridState OptimalState() const;

  const EnvConfig& config() const { return config_; }
  int num_states() const { return config_.num_states(); }
  GridState state() const { return state_; }
  int step_count() const { return step_count_; }
  bool done() const { return done_; }

 private:
  void CheckState(GridState state) const;
  StepInfo InfoFor(GridState state) const;
  RgbImage RenderBoard() const;
  void PaintCell(RgbImage& image, GridState state, Rgb color) const;

  EnvConfig config_;
  std::vector<double> cell_costs_;
  std::mt19937_64 rng_;
  GridState state_;
  int step_count_ = 0;
  bool done_ = false;
};

}  // namespace bridgespan

#endif  // BRIDGESPAN_ENVIRONMENT_H_
