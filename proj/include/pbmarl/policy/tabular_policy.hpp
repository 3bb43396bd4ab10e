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

#ifndef PBMARL_POLICY_TABULAR_POLICY_HPP_
#define PBMARL_POLICY_TABULAR_POLICY_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pbmarl/game/expectation.hpp"
#include "pbmarl/game/game.hpp"

namespace pbmarl {

// Map from information-state key to a distribution over that state's legal
// actions (aligned with the legal-action order). Keys that are not in the
// table play uniformly over the legal actions supplied at lookup time.
class TabularPolicy : public BehaviorPolicy {
 public:
  explicit TabularPolicy(std::string id = {}, bool trainable = true, std::uint64_t version = 0)
      : id_(std::move(id)), version_(version), trainable_(trainable) {}

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }
  std::uint64_t version() const { return version_; }
  void set_version(std::uint64_t version) { version_ = version; }
  bool trainable() const { return trainable_; }
  void set_trainable(bool trainable) { trainable_ = trainable; }

  // Validates and stores a distribution.
  void set(const std::string& key, std::vector<double> probs);
  void erase(const std::string& key) { table_.erase(key); }
  const std::vector<double>* find(const std::string& key) const;

  std::vector<double> action_probabilities(const std::string& info_state_key,
                                           std::span<const Action> legal_actions) const override;

  const std::map<std::string, std::vector<double>>& table() const { return table_; }
  std::size_t size() const { return table_.size(); }

  bool same_parameters(const TabularPolicy& other) const {
    return id_ == other.id_ && version_ == other.version_ && table_ == other.table_;
  }

 private:
  std::string id_;
  std::uint64_t version_;
  bool trainable_;
  std::map<std::string, std::vector<double>> table_;
};

// Plays action index 0 at every information state of `player`.
TabularPolicy first_action_policy(const Game& game, int player, std::string id);

// Plays the given per-information-state actions (index into legal actions).
TabularPolicy deterministic_policy(std::string id,
                                   const std::map<std::string, std::pair<int, int>>& choice);

using ParameterBlob = std::vector<std::uint8_t>;

inline constexpr char kBlobMagic[4] = {'P', 'B', 'T', 'P'};
inline constexpr std::uint32_t kBlobFormatVersion = 1;

// Self-describing little-endian encoding:
//   magic "PBTP" | u32 format version | u32 id length | id bytes |
//   u64 policy version | u64 entry count |
//   per entry: u32 key length | key bytes | u32 action count | f64 probs...
ParameterBlob serialize_parameters(const TabularPolicy& policy);
// Deserialized snapshots are not trainable.
TabularPolicy deserialize_parameters(std::span<const std::uint8_t> blob);

// Stable 64-bit digest of the serialized parameters.
std::uint64_t parameter_digest(const TabularPolicy& policy);

}  // namespace pbmarl

#endif  // PBMARL_POLICY_TABULAR_POLICY_HPP_
