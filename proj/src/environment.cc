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

#include "bridgespan/environment.h"

#include <limits>
#include <string>

#include "bridgespan/errors.h"

namespace bridgespan {

Action ActionFromCode(int code) {
  if (code < 0 || code >= kNumActions) {
    throw ArgumentError("action code out of range: " + std::to_string(code));
  }
  return static_cast<Action>(code);
}

Displacement ActionDisplacement(Action a, int step_length) {
  switch (a) {
    case Action::kNoop:
      return {0, 0};
    case Action::kUp:
      return {-1, 0};
    case Action::kDown:
      return {1, 0};
    case Action::kLeft:
      return {0, -step_length};
    case Action::kRight:
      return {0, step_length};
  }
  throw ArgumentError("unknown action");
}

void EnvConfig::Validate() const {
  if (min_span <= 0) throw ArgumentError("min_span must be positive");
  if (step_length <= 0) throw ArgumentError("step_length must be positive");
  if (max_span < min_span) throw ArgumentError("max_span < min_span");
  if ((max_span - min_span) % step_length != 0) {
    throw ArgumentError("span range must be a multiple of step_length");
  }
  if (max_steps < 1) throw ArgumentError("max_steps must be >= 1");
  if (cell_pixels < 1) throw ArgumentError("cell_pixels must be >= 1");
  if (materials.empty()) throw ArgumentError("at least one material needed");
  for (const auto& m : materials) m.Validate();
}

BridgeSpanEnv::BridgeSpanEnv(EnvConfig config, std::uint64_t seed)
    : config_(std::move(config)), rng_(seed) {
  config_.Validate();
  cell_costs_.resize(num_states());
  for (int s = 0; s < num_states(); ++s) {
    const GridCoord g = StateToGrid(s);
    cell_costs_[s] = UnitAreaCost(config_.materials[g.row], g.span);
  }
  std::uniform_int_distribution<int> pick(0, num_states() - 1);
  state_ = GridState{pick(rng_)};
}

ResetResult BridgeSpanEnv::Reset(std::optional<std::uint64_t> seed) {
  if (seed) rng_.seed(*seed);
  std::uniform_int_distribution<int> pick(0, num_states() - 1);
  return ResetTo(GridState{pick(rng_)});
}

ResetResult BridgeSpanEnv::ResetTo(GridState state) {
  CheckState(state);
  state_ = state;
  step_count_ = 0;
  done_ = false;
  return {state_, InfoFor(state_)};
}

StepResult BridgeSpanEnv::Step(Action action) {
  if (done_) throw UsageError("step() called on a finished episode");
  state_ = Transition(state_, action);
  ++step_count_;
  if (step_count_ >= config_.max_steps) done_ = true;
  StepResult out;
  out.next_state = state_;
  out.reward = Reward(state_);
  out.done = done_;
  out.info = InfoFor(state_);
  return out;
}

GridCoord BridgeSpanEnv::StateToGrid(int index) const {
  if (index < 0 || index >= num_states()) {
    throw ArgumentError("state index out of range: " + std::to_string(index));
  }
  const int cols = config_.num_columns();
  GridCoord g;
  g.row = index / cols;
  g.col = index % cols;
  g.span = config_.min_span + config_.step_length * g.col;
  return g;
}

GridState BridgeSpanEnv::GridToState(int row, int span) const {
  if (row < 0 || row >= config_.num_materials()) {
    throw ArgumentError("row out of range: " + std::to_string(row));
  }
  if (span < config_.min_span || span > config_.max_span ||
      (span - config_.min_span) % config_.step_length != 0) {
    throw ArgumentError("span not on the grid: " + std::to_string(span));
  }
  const int col = (span - config_.min_span) / config_.step_length;
  return GridState{row * config_.num_columns() + col};
}

GridState BridgeSpanEnv::Transition(GridState state, Action action) const {
  const GridCoord g = StateToGrid(state.index);
  const Displacement d = ActionDisplacement(action, config_.step_length);
  int row = g.row + d.d_row;
  int span = g.span + d.d_span;
  if (row < 0 || row >= config_.num_materials()) row = g.row;
  if (span < config_.min_span || span > config_.max_span) span = g.span;
  return GridToState(row, span);
}

double BridgeSpanEnv::CellCost(GridState state) const {
  CheckState(state);
  return cell_costs_[state.index];
}

void BridgeSpanEnv::CheckState(GridState state) const {
  if (state.index < 0 || state.index >= num_states()) {
    throw ArgumentError("state index out of range: " +
                        std::to_string(state.index));
  }
}

StepInfo BridgeSpanEnv::InfoFor(GridState state) const {
  const GridCoord g = StateToGrid(state.index);
  return {g.row, g.span};
}

RgbImage BridgeSpanEnv::RenderBoard() const {
  const int px = config_.cell_pixels;
  const int rows = config_.num_materials();
  const int cols = config_.num_columns();
  RgbImage image(rows * px, cols * px);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      image.FillRect(r * px, c * px, px, px,
                     (r + c) % 2 == 0 ? colors::kBlack : colors::kGray);
    }
  }
  return image;
}

void BridgeSpanEnv::PaintCell(RgbImage& image, GridState state,
                              Rgb color) const {
  const GridCoord g = StateToGrid(state.index);
  const int px = config_.cell_pixels;
  image.FillRect(g.row * px, g.col * px, px, px, color);
}

RgbImage BridgeSpanEnv::RenderState(GridState state) const {
  RgbImage image = RenderBoard();
  PaintCell(image, state, colors::kRed);
  return image;
}

RgbImage BridgeSpanEnv::RenderTrajectory(const EpisodeTrace& trace) const {
  if (trace.states.empty()) throw ArgumentError("empty trajectory");
  for (GridState s : trace.states) CheckState(s);
  RgbImage image = RenderBoard();
  PaintCell(image, trace.start(), colors::kRed);
  for (std::size_t i = 1; i + 1 < trace.states.size(); ++i) {
    PaintCell(image, trace.states[i], colors::kBlue);
  }
  PaintCell(image, trace.end(), colors::kGreen);
  return image;
}

GridState BridgeSpanEnv::OptimalState() const {
  GridState best{0};
  double best_cost = std::numeric_limits<double>::infinity();
  for (int s = 0; s < num_states(); ++s) {
    const double cost = UnitAreaCost(
        config_.materials[StateToGrid(s).row], StateToGrid(s).span);
    if (cost < best_cost) {
      best_cost = cost;
      best = GridState{s};
    }
  }
  return best;
}

}  // namespace bridgespan
