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

#include "bridgespan/replay_buffer.h"

#include <string>

#include "bridgespan/errors.h"

namespace bridgespan {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : storage_(capacity) {
  if (capacity == 0) throw ArgumentError("replay capacity must be positive");
}

void ReplayBuffer::Push(const Transition& t) {
  if (size_ < storage_.size()) {
    storage_[(head_ + size_) % storage_.size()] = t;
    ++size_;
  } else {
    storage_[head_] = t;
    head_ = (head_ + 1) % storage_.size();
  }
}

std::vector<Transition> ReplayBuffer::Sample(std::size_t batch_size,
                                             Rng& rng) const {
  if (size_ < batch_size || batch_size == 0) {
    throw UsageError("cannot sample " + std::to_string(batch_size) +
                     " transitions from a buffer of " + std::to_string(size_));
  }
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  std::vector<Transition> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) batch.push_back(At(pick(rng)));
  return batch;
}

const Transition& ReplayBuffer::At(std::size_t i) const {
  if (i >= size_) throw ArgumentError("replay index out of range");
  return storage_[(head_ + i) % storage_.size()];
}

}  // namespace bridgespan
