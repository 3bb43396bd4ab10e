// Copyright 2026 The pbmarl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PBMARL_COMMON_HPP_
#define PBMARL_COMMON_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pbmarl {

using Rng = std::mt19937_64;

// Thrown when a caller violates an operation's contract (bad input, illegal
// action, malformed data).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a named entity (game, policy, worker, agent) does not exist.
class NotFound : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Thrown by the runtime when work cannot proceed (e.g. retries exhausted).
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a consumer asks for data that producers have not delivered yet.
// Retryable.
class Starvation : public RuntimeFailure {
 public:
  using RuntimeFailure::RuntimeFailure;
};

// Mixes a base seed with a named substream. Every random component derives
// its generator from the experiment seed through this function.
std::uint64_t derive_seed(std::uint64_t base, std::string_view stream);

inline Rng make_rng(std::uint64_t base, std::string_view stream) {
  return Rng(derive_seed(base, stream));
}

std::string agent_name(int agent);

}  // namespace pbmarl

#endif  // PBMARL_COMMON_HPP_
