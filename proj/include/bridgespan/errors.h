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

#ifndef BRIDGESPAN_ERRORS_H_
#define BRIDGESPAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace bridgespan {

// A numeric argument outside the mathematical domain of a function
// (non-positive span, non-positive length).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An argument that violates a precondition (bad index, bad bracket).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation called in a state where it is not allowed, such as stepping a
// finished episode or back-propagating through a stale cache.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed or incompatible bytes on disk.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bridgespan

#endif  // BRIDGESPAN_ERRORS_H_
