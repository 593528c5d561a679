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

#ifndef BRIDGESPAN_REPLAY_BUFFER_H_
#define BRIDGESPAN_REPLAY_BUFFER_H_

#include <cstddef>
#include <random>
#include <vector>

#include "bridgespan/environment.h"

namespace bridgespan {

using Rng = std::mt19937_64;

// One environment step. Observations are re-rendered from the state index
// when needed, so only indices are kept.
struct Transition {
  int state = 0;
  int action = 0;
  double reward = 0.0;  // raw, yuan/m^2
  int next_state = 0;
  bool done = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Bounded FIFO of transitions; pushing onto a full buffer evicts the oldest.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void Push(const Transition& t);

  // Uniform with replacement. Throws UsageError if fewer than batch_size
  // transitions are stored.
  std::vector<Transition> Sample(std::size_t batch_size, Rng& rng) const;

  // i = 0 is the oldest stored transition.
  const Transition& At(std::size_t i) const;
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return storage_.size(); }
  bool empty() const { return size_ == 0; }

 private:
  std::vector<Transition> storage_;
  std::size_t head_ = 0;  // slot of the oldest entry
  std::size_t size_ = 0;
};

}  // namespace bridgespan

#endif  // BRIDGESPAN_REPLAY_BUFFER_H_
