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

#include "pbmarl/runtime/dataset_server.hpp"

namespace pbmarl {

EpisodeBuffer::EpisodeBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw InvalidArgument("episode buffer capacity must be positive");
}

void EpisodeBuffer::insert(const Transition& t) {
  ++insertions_;
  if (rows_.size() < capacity_) {
    rows_.push_back(t);
    return;
  }
  rows_[head_] = t;
  head_ = (head_ + 1) % capacity_;
}

const Transition& EpisodeBuffer::at(std::size_t i) const {
  if (i >= size()) throw InvalidArgument("episode buffer index out of range");
  return rows_[(head_ + i) % rows_.size()];
}

void EpisodeBuffer::clear() {
  rows_.clear();
  head_ = 0;
}

DatasetServer::DatasetServer(std::size_t capacity, std::size_t min_size)
    : capacity_(capacity), min_size_(min_size < 1 ? 1 : min_size) {
  if (capacity_ == 0) throw InvalidArgument("dataset capacity must be positive");
}

void DatasetServer::append(int agent, const SampleBatch& batch) {
  batch.validate();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = buffers_.try_emplace(agent, capacity_).first;
  for (std::size_t i = 0; i < batch.rows(); ++i) it->second.insert(batch.row(i));
}

SampleBatch DatasetServer::sample(int agent, int n, Rng& rng) const {
  if (n < 1) throw InvalidArgument("dataset sample size must be at least 1");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = buffers_.find(agent);
  const std::size_t size = it == buffers_.end() ? 0 : it->second.size();
  if (size < min_size_) {
    throw Starvation("dataset for " + agent_name(agent) + " holds " + std::to_string(size) +
                     " rows, fewer than the minimum " + std::to_string(min_size_));
  }
  std::uniform_int_distribution<std::size_t> pick(0, size - 1);
  SampleBatch out;
  for (int i = 0; i < n; ++i) out.push_back(it->second.at(pick(rng)));
  return out;
}

std::size_t DatasetServer::size(int agent) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = buffers_.find(agent);
  return it == buffers_.end() ? 0 : it->second.size();
}

std::uint64_t DatasetServer::insertions(int agent) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = buffers_.find(agent);
  return it == buffers_.end() ? 0 : it->second.insertions();
}

void DatasetServer::clear(int agent) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = buffers_.find(agent);
  if (it != buffers_.end()) it->second.clear();
}

std::vector<Transition> DatasetServer::contents(int agent) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Transition> out;
  auto it = buffers_.find(agent);
  if (it == buffers_.end()) return out;
  for (std::size_t i = 0; i < it->second.size(); ++i) out.push_back(it->second.at(i));
  return out;
}

}  // namespace pbmarl
