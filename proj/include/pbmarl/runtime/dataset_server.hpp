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

#ifndef PBMARL_RUNTIME_DATASET_SERVER_HPP_
#define PBMARL_RUNTIME_DATASET_SERVER_HPP_

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "pbmarl/common.hpp"
#include "pbmarl/runtime/sample_batch.hpp"

namespace pbmarl {

// Fixed-capacity FIFO ring buffer of transitions.
class EpisodeBuffer {
 public:
  explicit EpisodeBuffer(std::size_t capacity);

  void insert(const Transition& t);
  const Transition& at(std::size_t i) const;  // 0 = oldest
  std::size_t size() const { return rows_.size() < capacity_ ? rows_.size() : capacity_; }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t insertions() const { return insertions_; }
  void clear();

 private:
  std::size_t capacity_;
  std::vector<Transition> rows_;
  std::size_t head_ = 0;  // slot of the oldest row once full
  std::uint64_t insertions_ = 0;
};

// Per-agent offline dataset shared by actors (append) and learners (sample).
class DatasetServer {
 public:
  DatasetServer(std::size_t capacity, std::size_t min_size = 1);

  void append(int agent, const SampleBatch& batch);
  // Uniform with-replacement draw; throws Starvation while the agent's buffer
  // holds fewer than min_size rows.
  SampleBatch sample(int agent, int n, Rng& rng) const;
  std::size_t size(int agent) const;
  std::uint64_t insertions(int agent) const;
  void clear(int agent);
  std::vector<Transition> contents(int agent) const;

 private:
  std::size_t capacity_;
  std::size_t min_size_;
  mutable std::mutex mu_;
  std::map<int, EpisodeBuffer> buffers_;
};

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_DATASET_SERVER_HPP_
