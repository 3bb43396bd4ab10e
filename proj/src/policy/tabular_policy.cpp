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

#include "pbmarl/policy/tabular_policy.hpp"

#include <bit>
#include <cstring>

#include "pbmarl/game/game_tree.hpp"

namespace pbmarl {

void TabularPolicy::set(const std::string& key, std::vector<double> probs) {
  check_distribution(probs, probs.size(), key);
  if (probs.empty()) throw InvalidArgument("empty distribution for " + key);
  table_[key] = std::move(probs);
}

const std::vector<double>* TabularPolicy::find(const std::string& key) const {
  const auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<double> TabularPolicy::action_probabilities(
    const std::string& info_state_key, std::span<const Action> legal_actions) const {
  if (const std::vector<double>* probs = find(info_state_key)) {
    if (probs->size() != legal_actions.size()) {
      throw InvalidArgument("policy " + id_ + " stores " + std::to_string(probs->size()) +
                            " actions for " + info_state_key + " but " +
                            std::to_string(legal_actions.size()) + " are legal");
    }
    return *probs;
  }
  if (legal_actions.empty()) throw InvalidArgument("no legal actions at " + info_state_key);
  return std::vector<double>(legal_actions.size(), 1.0 / legal_actions.size());
}

TabularPolicy first_action_policy(const Game& game, int player, std::string id) {
  TabularPolicy policy(std::move(id));
  for (const InfoSet& info : game.tree().infosets(player)) {
    std::vector<double> probs(info.legal_actions.size(), 0.0);
    probs[0] = 1.0;
    policy.set(info.key, std::move(probs));
  }
  return policy;
}

TabularPolicy deterministic_policy(std::string id,
                                   const std::map<std::string, std::pair<int, int>>& choice) {
  TabularPolicy policy(std::move(id));
  for (const auto& [key, pick] : choice) {
    const auto [index, count] = pick;
    if (index < 0 || index >= count) throw InvalidArgument("action index out of range at " + key);
    std::vector<double> probs(count, 0.0);
    probs[index] = 1.0;
    policy.set(key, std::move(probs));
  }
  return policy;
}

namespace {

class Writer {
 public:
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void bytes(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void raw(const char* p, std::size_t n) { out_.insert(out_.end(), p, p + n); }
  ParameterBlob take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  ParameterBlob out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::string bytes() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  void expect(const char* p, std::size_t n) {
    need(n);
    if (std::memcmp(in_.data() + pos_, p, n) != 0) {
      throw InvalidArgument("parameter blob: bad magic bytes");
    }
    pos_ += n;
  }
  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw InvalidArgument("parameter blob is truncated");
  }
  std::uint64_t get(int n) {
    need(n);
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

ParameterBlob serialize_parameters(const TabularPolicy& policy) {
  Writer w;
  w.raw(kBlobMagic, sizeof(kBlobMagic));
  w.u32(kBlobFormatVersion);
  w.bytes(policy.id());
  w.u64(policy.version());
  w.u64(policy.size());
  for (const auto& [key, probs] : policy.table()) {
    w.bytes(key);
    w.u32(static_cast<std::uint32_t>(probs.size()));
    for (double p : probs) w.f64(p);
  }
  return w.take();
}

TabularPolicy deserialize_parameters(std::span<const std::uint8_t> blob) {
  Reader r(blob);
  r.expect(kBlobMagic, sizeof(kBlobMagic));
  const std::uint32_t format = r.u32();
  if (format != kBlobFormatVersion) {
    throw InvalidArgument("parameter blob format version " + std::to_string(format) +
                          " is not supported");
  }
  TabularPolicy policy(r.bytes(), /*trainable=*/false);
  policy.set_version(r.u64());
  const std::uint64_t entries = r.u64();
  for (std::uint64_t e = 0; e < entries; ++e) {
    std::string key = r.bytes();
    const std::uint32_t n = r.u32();
    if (n > r.remaining() / 8) throw InvalidArgument("parameter blob is truncated");
    std::vector<double> probs(n);
    for (double& p : probs) p = r.f64();
    policy.set(key, std::move(probs));
  }
  if (!r.done()) throw InvalidArgument("parameter blob has trailing bytes");
  return policy;
}

std::uint64_t parameter_digest(const TabularPolicy& policy) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : serialize_parameters(policy)) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace pbmarl
